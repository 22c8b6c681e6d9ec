// Copyright 2026 The skipconv Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "skipconv/nn/tensor.hpp"

// Differentiable layer kernels over 4-D (batch, channel, row, col) tensors.
//
// Every layer is a pair of pure functions: forward maps inputs and parameters
// to an output, backward maps the upstream gradient to gradients of
// sum(grad_out * output) with respect to each input. Convolutions use
// cross-correlation semantics: the kernel is not flipped.
namespace skipconv::nn {

struct Conv2dParams {
  Tensor weight;  // (out_ch, in_ch, kh, kw)
  Tensor bias;    // (out_ch)
  int stride = 1;
  int padding = 0;

  std::size_t out_channels() const { return weight.dim(0); }
  std::size_t in_channels() const { return weight.dim(1); }
  std::size_t kernel() const { return weight.dim(2); }
};

// Adjoint of a padding-free strided convolution.
struct ConvTranspose2dParams {
  Tensor weight;  // (in_ch, out_ch, kh, kw)
  Tensor bias;    // (out_ch)
  int stride = 2;

  std::size_t in_channels() const { return weight.dim(0); }
  std::size_t out_channels() const { return weight.dim(1); }
  std::size_t kernel() const { return weight.dim(2); }
};

struct ConvGrads {
  Tensor input;  // empty when not requested
  Tensor weight;
  Tensor bias;
};

Conv2dParams make_conv2d(std::size_t in_ch, std::size_t out_ch,
                         std::size_t kernel, int stride, int padding);
ConvTranspose2dParams make_conv_transpose2d(std::size_t in_ch,
                                            std::size_t out_ch,
                                            std::size_t kernel, int stride);

Tensor conv2d_forward(const Tensor& x, const Conv2dParams& p);
ConvGrads conv2d_backward(const Tensor& x, const Conv2dParams& p,
                          const Tensor& grad_out, bool input_grad = true);

// Output extent is (H - 1) * stride + kernel, i.e. 2H for kernel == stride == 2.
Tensor conv_transpose2d_forward(const Tensor& x, const ConvTranspose2dParams& p);
ConvGrads conv_transpose2d_backward(const Tensor& x,
                                    const ConvTranspose2dParams& p,
                                    const Tensor& grad_out,
                                    bool input_grad = true);

// Per-channel normalization over batch and spatial dims.
struct BatchNormParams {
  Tensor gamma;
  Tensor beta;
  Tensor running_mean;
  Tensor running_var;  // strictly positive
  double eps = 1e-5;
  double momentum = 0.1;

  static BatchNormParams make(std::size_t channels, double eps = 1e-5,
                              double momentum = 0.1);
  std::size_t channels() const { return gamma.numel(); }
};

// Saved by forward for the matching backward call.
struct BatchNormCache {
  Tensor normalized;            // x_hat
  std::vector<double> inv_std;  // per channel
  bool training = true;
};

struct BatchNormGrads {
  Tensor input;
  Tensor gamma;
  Tensor beta;
};

// Training mode normalizes with batch statistics and updates the running
// statistics in `p`; eval mode reads them. A training batch with a single
// value per channel is rejected.
Tensor batch_norm_forward(const Tensor& x, BatchNormParams& p, bool training,
                          BatchNormCache* cache = nullptr);
BatchNormGrads batch_norm_backward(const Tensor& grad_out,
                                   const BatchNormParams& p,
                                   const BatchNormCache& cache);

// max(x, slope * x) for slope in [0, 1); relu is slope 0.
Tensor leaky_relu(const Tensor& x, double slope);
Tensor leaky_relu_backward(const Tensor& x, const Tensor& grad_out,
                           double slope);
inline Tensor relu(const Tensor& x) { return leaky_relu(x, 0.0); }
inline Tensor relu_backward(const Tensor& x, const Tensor& grad_out) {
  return leaky_relu_backward(x, grad_out, 0.0);
}

double mse_loss(const Tensor& pred, const Tensor& target);
// d mse / d pred = 2 (pred - target) / N
Tensor mse_loss_backward(const Tensor& pred, const Tensor& target);

Tensor add(const Tensor& a, const Tensor& b);
void add_inplace(Tensor& a, const Tensor& b);
// Channel-wise concatenation of two (N, C, H, W) tensors, `a` first.
Tensor concat_channels(const Tensor& a, const Tensor& b);
// Inverse of concat_channels: first `channels_a` channels, then the rest.
std::pair<Tensor, Tensor> split_channels(const Tensor& x,
                                         std::size_t channels_a);

void init_normal(Tensor& t, double stddev, std::mt19937_64& rng);

}  // namespace skipconv::nn
