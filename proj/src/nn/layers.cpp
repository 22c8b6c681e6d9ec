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

#include "skipconv/nn/layers.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::nn {
namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMat>;
using ConstMatMap = Eigen::Map<const RowMat>;
using StridedMap = Eigen::Map<RowMat, 0, Eigen::OuterStride<>>;
using ConstStridedMap = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;

struct Geometry {
  std::size_t channels, height, width;
  std::size_t kernel;
  std::size_t stride, padding;
  std::size_t out_h, out_w;
};

// Output columns whose input column ow * stride + kj - padding is in bounds.
std::pair<std::size_t, std::size_t> valid_columns(const Geometry& g,
                                                  std::size_t kj,
                                                  std::ptrdiff_t w) {
  std::size_t lo = 0;
  while (lo < g.out_w && lo * g.stride + kj < g.padding) ++lo;
  std::size_t hi = lo;
  while (hi < g.out_w &&
         static_cast<std::ptrdiff_t>(hi * g.stride + kj) -
                 static_cast<std::ptrdiff_t>(g.padding) <
             w) {
    ++hi;
  }
  return {lo, hi};
}

// Unfolds output rows [oh0, oh1) of one (C, H, W) image into a
// (C*k*k, (oh1-oh0)*out_w) column matrix.
void im2col(const double* img, const Geometry& g, std::size_t oh0,
            std::size_t oh1, double* cols) {
  const std::size_t k = g.kernel;
  const std::size_t span = (oh1 - oh0) * g.out_w;
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(g.padding);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(g.height);
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(g.width);
  for (std::size_t c = 0; c < g.channels; ++c) {
    const double* plane = img + c * g.height * g.width;
    for (std::size_t ki = 0; ki < k; ++ki) {
      for (std::size_t kj = 0; kj < k; ++kj) {
        double* row = cols + ((c * k + ki) * k + kj) * span;
        for (std::size_t oh = oh0; oh < oh1; ++oh) {
          const std::ptrdiff_t ih =
              static_cast<std::ptrdiff_t>(oh * g.stride + ki) - pad;
          double* dst = row + (oh - oh0) * g.out_w;
          if (ih < 0 || ih >= h) {
            std::fill(dst, dst + g.out_w, 0.0);
            continue;
          }
          const double* src = plane + ih * w;
          const auto [lo, hi] = valid_columns(g, kj, w);
          std::fill(dst, dst + lo, 0.0);
          if (g.stride == 1) {
            std::copy(src + lo + kj - g.padding, src + hi + kj - g.padding,
                      dst + lo);
          } else {
            for (std::size_t ow = lo; ow < hi; ++ow) {
              dst[ow] = src[ow * g.stride + kj - g.padding];
            }
          }
          std::fill(dst + hi, dst + g.out_w, 0.0);
        }
      }
    }
  }
}

// Adjoint of im2col: scatters-and-adds the columns of rows [oh0, oh1) into
// the image, which the caller zeroes once.
void col2im(const double* cols, const Geometry& g, std::size_t oh0,
            std::size_t oh1, double* img) {
  const std::size_t k = g.kernel;
  const std::size_t span = (oh1 - oh0) * g.out_w;
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(g.padding);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(g.height);
  const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(g.width);
  for (std::size_t c = 0; c < g.channels; ++c) {
    double* plane = img + c * g.height * g.width;
    for (std::size_t ki = 0; ki < k; ++ki) {
      for (std::size_t kj = 0; kj < k; ++kj) {
        const double* row = cols + ((c * k + ki) * k + kj) * span;
        for (std::size_t oh = oh0; oh < oh1; ++oh) {
          const std::ptrdiff_t ih =
              static_cast<std::ptrdiff_t>(oh * g.stride + ki) - pad;
          if (ih < 0 || ih >= h) continue;
          const double* src = row + (oh - oh0) * g.out_w;
          double* dst = plane + ih * w;
          const auto [lo, hi] = valid_columns(g, kj, w);
          for (std::size_t ow = lo; ow < hi; ++ow) {
            dst[ow * g.stride + kj - g.padding] += src[ow];
          }
        }
      }
    }
  }
}

// Output rows per im2col chunk so the column buffer stays cache-resident.
std::size_t chunk_rows(std::size_t patch, std::size_t out_w, std::size_t out_h) {
  constexpr std::size_t kChunkDoubles = 192 * 1024;
  const std::size_t rows = kChunkDoubles / std::max<std::size_t>(1, patch * out_w);
  return std::clamp<std::size_t>(rows, 1, out_h);
}

void require_rank4(const Tensor& x, const char* what) {
  if (x.rank() != 4) {
    throw ShapeError(std::string(what) + ": expected a 4-D tensor, got " +
                     shape_to_string(x.shape()));
  }
}

void check_square_kernel(const Tensor& weight, const char* what) {
  if (weight.rank() != 4 || weight.dim(2) != weight.dim(3) ||
      weight.dim(2) == 0) {
    throw ShapeError(std::string(what) + ": weight must be (a, b, k, k), got " +
                     shape_to_string(weight.shape()));
  }
}

Geometry conv_geometry(const Tensor& x, const Conv2dParams& p) {
  require_rank4(x, "conv2d");
  check_square_kernel(p.weight, "conv2d");
  if (p.stride <= 0 || p.padding < 0) {
    throw ConfigError("conv2d: stride must be positive and padding non-negative");
  }
  if (x.dim(1) != p.in_channels()) {
    throw ShapeError("conv2d: input " + shape_to_string(x.shape()) +
                     " does not match weight " +
                     shape_to_string(p.weight.shape()));
  }
  if (p.bias.numel() != p.out_channels()) {
    throw ShapeError("conv2d: bias " + shape_to_string(p.bias.shape()) +
                     " does not match weight " +
                     shape_to_string(p.weight.shape()));
  }
  const std::size_t k = p.kernel();
  const std::size_t pad = static_cast<std::size_t>(p.padding);
  if (x.dim(2) + 2 * pad < k || x.dim(3) + 2 * pad < k) {
    throw ShapeError("conv2d: padded input " + shape_to_string(x.shape()) +
                     " smaller than kernel " +
                     shape_to_string(p.weight.shape()));
  }
  const std::size_t s = static_cast<std::size_t>(p.stride);
  return Geometry{x.dim(1),
                  x.dim(2),
                  x.dim(3),
                  k,
                  s,
                  pad,
                  (x.dim(2) + 2 * pad - k) / s + 1,
                  (x.dim(3) + 2 * pad - k) / s + 1};
}

// Geometry of the strided convolution whose adjoint is `p`, seen from the
// (large) output side of the transposed convolution.
Geometry transposed_geometry(const Tensor& x, const ConvTranspose2dParams& p) {
  require_rank4(x, "conv_transpose2d");
  check_square_kernel(p.weight, "conv_transpose2d");
  if (p.stride <= 0) throw ConfigError("conv_transpose2d: stride must be positive");
  if (x.dim(1) != p.in_channels()) {
    throw ShapeError("conv_transpose2d: input " + shape_to_string(x.shape()) +
                     " does not match weight " +
                     shape_to_string(p.weight.shape()));
  }
  if (p.bias.numel() != p.out_channels()) {
    throw ShapeError("conv_transpose2d: bias " +
                     shape_to_string(p.bias.shape()) +
                     " does not match weight " +
                     shape_to_string(p.weight.shape()));
  }
  const std::size_t k = p.kernel();
  const std::size_t s = static_cast<std::size_t>(p.stride);
  return Geometry{p.out_channels(),
                  (x.dim(2) - 1) * s + k,
                  (x.dim(3) - 1) * s + k,
                  k,
                  s,
                  0,
                  x.dim(2),
                  x.dim(3)};
}

}  // namespace

Conv2dParams make_conv2d(std::size_t in_ch, std::size_t out_ch,
                         std::size_t kernel, int stride, int padding) {
  return Conv2dParams{Tensor({out_ch, in_ch, kernel, kernel}),
                      Tensor({out_ch}), stride, padding};
}

ConvTranspose2dParams make_conv_transpose2d(std::size_t in_ch,
                                            std::size_t out_ch,
                                            std::size_t kernel, int stride) {
  return ConvTranspose2dParams{Tensor({in_ch, out_ch, kernel, kernel}),
                               Tensor({out_ch}), stride};
}

Tensor conv2d_forward(const Tensor& x, const Conv2dParams& p) {
  const Geometry g = conv_geometry(x, p);
  const std::size_t batch = x.dim(0);
  const std::size_t cout = p.out_channels();
  const std::size_t patch = g.channels * g.kernel * g.kernel;
  const std::size_t positions = g.out_h * g.out_w;
  const std::size_t rows = chunk_rows(patch, g.out_w, g.out_h);
  Tensor out({batch, cout, g.out_h, g.out_w});
  std::vector<double> cols(patch * rows * g.out_w);
  ConstMatMap weight(p.weight.ptr(), cout, patch);
  for (std::size_t n = 0; n < batch; ++n) {
    double* yn = out.ptr() + n * cout * positions;
    for (std::size_t oh0 = 0; oh0 < g.out_h; oh0 += rows) {
      const std::size_t oh1 = std::min(g.out_h, oh0 + rows);
      const std::size_t span = (oh1 - oh0) * g.out_w;
      im2col(x.ptr() + n * g.channels * g.height * g.width, g, oh0, oh1,
             cols.data());
      StridedMap y(yn + oh0 * g.out_w, cout, span, Eigen::OuterStride<>(positions));
      y.noalias() = weight * ConstMatMap(cols.data(), patch, span);
    }
    MatMap y(yn, cout, positions);
    for (std::size_t c = 0; c < cout; ++c) y.row(c).array() += p.bias[c];
  }
  return out;
}

ConvGrads conv2d_backward(const Tensor& x, const Conv2dParams& p,
                          const Tensor& grad_out, bool input_grad) {
  const Geometry g = conv_geometry(x, p);
  const std::size_t batch = x.dim(0);
  const std::size_t cout = p.out_channels();
  const Shape expected{batch, cout, g.out_h, g.out_w};
  if (grad_out.shape() != expected) {
    throw ShapeError("conv2d_backward: grad_out " +
                     shape_to_string(grad_out.shape()) +
                     " does not match output " + shape_to_string(expected));
  }
  const std::size_t patch = g.channels * g.kernel * g.kernel;
  const std::size_t positions = g.out_h * g.out_w;
  const std::size_t image = g.channels * g.height * g.width;
  const std::size_t rows = chunk_rows(patch, g.out_w, g.out_h);

  ConvGrads grads;
  grads.weight = Tensor(p.weight.shape());
  grads.bias = Tensor(p.bias.shape());
  if (input_grad) grads.input = Tensor(x.shape());

  std::vector<double> cols(patch * rows * g.out_w);
  ConstMatMap weight(p.weight.ptr(), cout, patch);
  MatMap grad_weight(grads.weight.ptr(), cout, patch);
  for (std::size_t n = 0; n < batch; ++n) {
    const double* gyn = grad_out.ptr() + n * cout * positions;
    ConstMatMap gy(gyn, cout, positions);
    // Plain loop: Eigen's vectorized sum peels by address alignment, which
    // would make the summation order allocation-dependent.
    for (std::size_t c = 0; c < cout; ++c) {
      const double* row = gyn + c * positions;
      double s = 0.0;
      for (std::size_t i = 0; i < positions; ++i) s += row[i];
      grads.bias[c] += s;
    }
    for (std::size_t oh0 = 0; oh0 < g.out_h; oh0 += rows) {
      const std::size_t oh1 = std::min(g.out_h, oh0 + rows);
      const std::size_t span = (oh1 - oh0) * g.out_w;
      ConstStridedMap gy_chunk(gyn + oh0 * g.out_w, cout, span,
                               Eigen::OuterStride<>(positions));
      im2col(x.ptr() + n * image, g, oh0, oh1, cols.data());
      grad_weight.noalias() +=
          gy_chunk * ConstMatMap(cols.data(), patch, span).transpose();
      if (input_grad) {
        MatMap(cols.data(), patch, span).noalias() = weight.transpose() * gy_chunk;
        col2im(cols.data(), g, oh0, oh1, grads.input.ptr() + n * image);
      }
    }
  }
  return grads;
}

Tensor conv_transpose2d_forward(const Tensor& x, const ConvTranspose2dParams& p) {
  const Geometry g = transposed_geometry(x, p);
  const std::size_t batch = x.dim(0);
  const std::size_t cin = p.in_channels();
  const std::size_t cout = p.out_channels();
  const std::size_t patch = cout * g.kernel * g.kernel;
  const std::size_t positions = g.out_h * g.out_w;
  const std::size_t image = cout * g.height * g.width;
  Tensor out({batch, cout, g.height, g.width});
  std::vector<double> cols(patch * positions);
  ConstMatMap weight(p.weight.ptr(), cin, patch);
  for (std::size_t n = 0; n < batch; ++n) {
    MatMap(cols.data(), patch, positions).noalias() =
        weight.transpose() *
        ConstMatMap(x.ptr() + n * cin * positions, cin, positions);
    double* y = out.ptr() + n * image;
    std::fill(y, y + image, 0.0);
    col2im(cols.data(), g, 0, g.out_h, y);
    for (std::size_t c = 0; c < cout; ++c) {
      double* plane = y + c * g.height * g.width;
      for (std::size_t i = 0; i < g.height * g.width; ++i) plane[i] += p.bias[c];
    }
  }
  return out;
}

ConvGrads conv_transpose2d_backward(const Tensor& x,
                                    const ConvTranspose2dParams& p,
                                    const Tensor& grad_out, bool input_grad) {
  const Geometry g = transposed_geometry(x, p);
  const std::size_t batch = x.dim(0);
  const std::size_t cin = p.in_channels();
  const std::size_t cout = p.out_channels();
  const Shape expected{batch, cout, g.height, g.width};
  if (grad_out.shape() != expected) {
    throw ShapeError("conv_transpose2d_backward: grad_out " +
                     shape_to_string(grad_out.shape()) +
                     " does not match output " + shape_to_string(expected));
  }
  const std::size_t patch = cout * g.kernel * g.kernel;
  const std::size_t positions = g.out_h * g.out_w;
  const std::size_t image = cout * g.height * g.width;

  ConvGrads grads;
  grads.weight = Tensor(p.weight.shape());
  grads.bias = Tensor(p.bias.shape());
  if (input_grad) grads.input = Tensor(x.shape());

  std::vector<double> cols(patch * positions);
  ConstMatMap weight(p.weight.ptr(), cin, patch);
  MatMap grad_weight(grads.weight.ptr(), cin, patch);
  for (std::size_t n = 0; n < batch; ++n) {
    const double* gy = grad_out.ptr() + n * image;
    im2col(gy, g, 0, g.out_h, cols.data());
    ConstMatMap gcols(cols.data(), patch, positions);
    ConstMatMap xn(x.ptr() + n * cin * positions, cin, positions);
    grad_weight.noalias() += xn * gcols.transpose();
    if (input_grad) {
      MatMap(grads.input.ptr() + n * cin * positions, cin, positions)
          .noalias() = weight * gcols;
    }
    for (std::size_t c = 0; c < cout; ++c) {
      const double* plane = gy + c * g.height * g.width;
      double s = 0.0;
      for (std::size_t i = 0; i < g.height * g.width; ++i) s += plane[i];
      grads.bias[c] += s;
    }
  }
  return grads;
}

BatchNormParams BatchNormParams::make(std::size_t channels, double eps,
                                      double momentum) {
  return BatchNormParams{Tensor({channels}, 1.0), Tensor({channels}, 0.0),
                         Tensor({channels}, 0.0), Tensor({channels}, 1.0),
                         eps, momentum};
}

Tensor batch_norm_forward(const Tensor& x, BatchNormParams& p, bool training,
                          BatchNormCache* cache) {
  require_rank4(x, "batch_norm");
  const std::size_t batch = x.dim(0);
  const std::size_t channels = x.dim(1);
  const std::size_t plane = x.dim(2) * x.dim(3);
  if (channels != p.channels()) {
    throw ShapeError("batch_norm: input " + shape_to_string(x.shape()) +
                     " does not match " + std::to_string(p.channels()) +
                     " channels");
  }
  const std::size_t count = batch * plane;
  if (training && count < 2) {
    throw ShapeError("batch_norm: degenerate training batch " +
                     shape_to_string(x.shape()) +
                     " has one value per channel, variance is undefined");
  }

  Tensor out(x.shape());
  Tensor normalized(x.shape());
  std::vector<double> inv_std(channels);
  for (std::size_t c = 0; c < channels; ++c) {
    double mean, var;
    if (training) {
      double sum = 0.0;
      for (std::size_t n = 0; n < batch; ++n) {
        const double* src = x.ptr() + (n * channels + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) sum += src[i];
      }
      mean = sum / static_cast<double>(count);
      double sq = 0.0;
      for (std::size_t n = 0; n < batch; ++n) {
        const double* src = x.ptr() + (n * channels + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) {
          const double d = src[i] - mean;
          sq += d * d;
        }
      }
      var = sq / static_cast<double>(count);
      const double unbiased = sq / static_cast<double>(count - 1);
      p.running_mean[c] =
          (1.0 - p.momentum) * p.running_mean[c] + p.momentum * mean;
      p.running_var[c] =
          (1.0 - p.momentum) * p.running_var[c] + p.momentum * unbiased;
    } else {
      mean = p.running_mean[c];
      var = p.running_var[c];
    }
    const double is = 1.0 / std::sqrt(var + p.eps);
    inv_std[c] = is;
    const double gamma = p.gamma[c];
    const double beta = p.beta[c];
    for (std::size_t n = 0; n < batch; ++n) {
      const std::size_t off = (n * channels + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        const double xh = (x[off + i] - mean) * is;
        normalized[off + i] = xh;
        out[off + i] = gamma * xh + beta;
      }
    }
  }
  if (cache) {
    cache->normalized = std::move(normalized);
    cache->inv_std = std::move(inv_std);
    cache->training = training;
  }
  return out;
}

BatchNormGrads batch_norm_backward(const Tensor& grad_out,
                                   const BatchNormParams& p,
                                   const BatchNormCache& cache) {
  require_same_shape(grad_out, cache.normalized, "batch_norm_backward");
  const std::size_t batch = grad_out.dim(0);
  const std::size_t channels = grad_out.dim(1);
  const std::size_t plane = grad_out.dim(2) * grad_out.dim(3);
  const double count = static_cast<double>(batch * plane);

  BatchNormGrads grads{Tensor(grad_out.shape()), Tensor({channels}),
                       Tensor({channels})};
  for (std::size_t c = 0; c < channels; ++c) {
    double sum_g = 0.0, sum_gx = 0.0;
    for (std::size_t n = 0; n < batch; ++n) {
      const std::size_t off = (n * channels + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        sum_g += grad_out[off + i];
        sum_gx += grad_out[off + i] * cache.normalized[off + i];
      }
    }
    grads.beta[c] = sum_g;
    grads.gamma[c] = sum_gx;
    const double scale = p.gamma[c] * cache.inv_std[c];
    for (std::size_t n = 0; n < batch; ++n) {
      const std::size_t off = (n * channels + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        if (cache.training) {
          grads.input[off + i] =
              scale * (grad_out[off + i] - sum_g / count -
                       cache.normalized[off + i] * sum_gx / count);
        } else {
          grads.input[off + i] = scale * grad_out[off + i];
        }
      }
    }
  }
  return grads;
}

Tensor leaky_relu(const Tensor& x, double slope) {
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.numel(); ++i) {
    out[i] = x[i] > 0.0 ? x[i] : slope * x[i];
  }
  return out;
}

Tensor leaky_relu_backward(const Tensor& x, const Tensor& grad_out,
                           double slope) {
  require_same_shape(x, grad_out, "leaky_relu_backward");
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.numel(); ++i) {
    out[i] = x[i] > 0.0 ? grad_out[i] : slope * grad_out[i];
  }
  return out;
}

double mse_loss(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "mse_loss");
  if (pred.empty()) throw ShapeError("mse_loss: empty tensors");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.numel(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.numel());
}

Tensor mse_loss_backward(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "mse_loss_backward");
  Tensor grad(pred.shape());
  const double scale = 2.0 / static_cast<double>(pred.numel());
  for (std::size_t i = 0; i < pred.numel(); ++i) {
    grad[i] = scale * (pred[i] - target[i]);
  }
  return grad;
}

Tensor add(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  add_inplace(out, b);
  return out;
}

void add_inplace(Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  for (std::size_t i = 0; i < a.numel(); ++i) a[i] += b[i];
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  require_rank4(a, "concat_channels");
  require_rank4(b, "concat_channels");
  if (a.dim(0) != b.dim(0) || a.dim(2) != b.dim(2) || a.dim(3) != b.dim(3)) {
    throw ShapeError("concat_channels: " + shape_to_string(a.shape()) +
                     " and " + shape_to_string(b.shape()) +
                     " differ outside the channel dim");
  }
  const std::size_t plane = a.dim(2) * a.dim(3);
  const std::size_t ca = a.dim(1) * plane;
  const std::size_t cb = b.dim(1) * plane;
  Tensor out({a.dim(0), a.dim(1) + b.dim(1), a.dim(2), a.dim(3)});
  for (std::size_t n = 0; n < a.dim(0); ++n) {
    double* dst = out.ptr() + n * (ca + cb);
    std::copy_n(a.ptr() + n * ca, ca, dst);
    std::copy_n(b.ptr() + n * cb, cb, dst + ca);
  }
  return out;
}

std::pair<Tensor, Tensor> split_channels(const Tensor& x,
                                         std::size_t channels_a) {
  require_rank4(x, "split_channels");
  if (channels_a > x.dim(1)) {
    throw ShapeError("split_channels: cannot take " +
                     std::to_string(channels_a) + " channels from " +
                     shape_to_string(x.shape()));
  }
  const std::size_t plane = x.dim(2) * x.dim(3);
  const std::size_t ca = channels_a * plane;
  const std::size_t cb = (x.dim(1) - channels_a) * plane;
  Tensor a({x.dim(0), channels_a, x.dim(2), x.dim(3)});
  Tensor b({x.dim(0), x.dim(1) - channels_a, x.dim(2), x.dim(3)});
  for (std::size_t n = 0; n < x.dim(0); ++n) {
    const double* src = x.ptr() + n * (ca + cb);
    std::copy_n(src, ca, a.ptr() + n * ca);
    std::copy_n(src + ca, cb, b.ptr() + n * cb);
  }
  return {std::move(a), std::move(b)};
}

void init_normal(Tensor& t, double stddev, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (double& v : t.data()) v = dist(rng);
}

}  // namespace skipconv::nn
