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
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipconv/nn/layers.hpp"
#include "skipconv/nn/tensor.hpp"

// U-Net over spectral images whose skip paths carry chains of residual
// convolution blocks.
//
// Encoder layer i halves the spatial extent with a 5x5 stride-2 convolution
// (leaky activation before it from layer 2 on, normalization after it from
// layer 2 on). Skip chain i applies skip_counts[i] blocks
//
//     y = norm(conv5x5(leaky(x)) + x)
//
// to encoder output i; the chain on the 1x1 bottleneck feeds the decoder.
// Decoder layer j applies relu, a 2x2 stride-2 transposed convolution and
// normalization to concat(decoder output j-1, skip output depth-j); the
// first consumes the bottleneck skip output alone and the last is linear
// with one output channel.
//
// Skip blocks use stride 1 with padding 2 so the residual add and the
// decoder concatenation see matching extents.
namespace skipconv::net {

struct NetworkConfig {
  std::size_t depth = 8;
  std::vector<std::size_t> enc_channels = {64, 128, 256, 512, 512, 512, 512, 512};
  std::vector<std::size_t> skip_counts = {8, 7, 6, 5, 4, 3, 2, 1};
  std::size_t input_size = 256;
  double leaky_slope = 0.2;    // encoder and skip blocks
  double decoder_slope = 0.0;  // relu
  double norm_eps = 1e-5;
  double norm_momentum = 0.1;
  double init_std = 0.02;

  static NetworkConfig full();
  static NetworkConfig desk();     // channels [16, 32, 64, 64, 64, 64, 64, 64]
  static NetworkConfig reduced();  // channels [4, 4, 8, 8, 8, 8, 8, 8]
  static NetworkConfig baseline(NetworkConfig cfg);  // all skip counts zero

  bool operator==(const NetworkConfig&) const = default;
};

// Throws ConfigError naming the violated constraint.
void validate(const NetworkConfig& cfg);
NetworkConfig network_preset(const std::string& name);

nlohmann::json to_json(const NetworkConfig& cfg);
NetworkConfig network_config_from_json(const nlohmann::json& j);

struct SkipBlock {
  nn::Conv2dParams conv;  // 5x5, stride 1, padding 2, channel-preserving
  nn::BatchNormParams norm;
};

SkipBlock make_skip_block(std::size_t channels, double eps = 1e-5,
                          double momentum = 0.1);

struct SkipBlockCache {
  nn::Tensor input;
  nn::BatchNormCache norm;
};

struct SkipBlockGrads {
  nn::Tensor input;
  nn::ConvGrads conv;
  nn::BatchNormGrads norm;
};

// norm(conv(leaky(x)) + x); output shape equals input shape.
nn::Tensor skip_block_forward(const nn::Tensor& x, SkipBlock& block, double slope,
                              bool training, SkipBlockCache* cache = nullptr);
SkipBlockGrads skip_block_backward(const nn::Tensor& grad_out, const SkipBlock& block,
                                   double slope, const SkipBlockCache& cache);

struct EncoderLayer {
  nn::Conv2dParams conv;
  bool has_norm = true;
  nn::BatchNormParams norm;
};

struct DecoderLayer {
  nn::ConvTranspose2dParams conv;
  bool has_norm = true;
  nn::BatchNormParams norm;
};

struct NamedTensor {
  std::string name;
  nn::Tensor* tensor;
};

struct ShapeTrace {
  std::vector<nn::Shape> encoder;
  std::vector<nn::Shape> skip;
  std::vector<nn::Shape> decoder;
};

class SkipConvNet {
 public:
  SkipConvNet(const NetworkConfig& cfg, std::uint64_t seed);

  const NetworkConfig& config() const { return cfg_; }

  // (B, 1, S, S) -> (B, 1, S, S). Training mode uses batch statistics,
  // updates running statistics and keeps what backward needs.
  nn::Tensor forward(const nn::Tensor& x, bool training);

  // Accumulates parameter gradients for the last training forward and
  // returns the gradient with respect to its input.
  nn::Tensor backward(const nn::Tensor& grad_out);

  // Trainable tensors in a fixed order with stable names.
  std::vector<NamedTensor> parameters();
  // Normalization running statistics.
  std::vector<NamedTensor> buffers();
  std::size_t parameter_count() const;
  void zero_grad();
  void clear_cache();

  const ShapeTrace& last_trace() const { return trace_; }

  std::vector<EncoderLayer>& encoder() { return encoder_; }
  std::vector<std::vector<SkipBlock>>& skips() { return skips_; }
  std::vector<DecoderLayer>& decoder() { return decoder_; }

 private:
  struct LayerCache {
    nn::Tensor input;  // before the activation
    nn::BatchNormCache norm;
  };

  nn::Tensor skip_forward(std::size_t level, const nn::Tensor& x, bool training);
  nn::Tensor skip_backward(std::size_t level, nn::Tensor grad);

  NetworkConfig cfg_;
  std::vector<EncoderLayer> encoder_;
  std::vector<std::vector<SkipBlock>> skips_;
  std::vector<DecoderLayer> decoder_;

  bool cached_ = false;
  std::vector<LayerCache> enc_cache_;
  std::vector<std::vector<SkipBlockCache>> skip_cache_;
  std::vector<LayerCache> dec_cache_;
  ShapeTrace trace_;
};

}  // namespace skipconv::net
