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
#include "skipconv/net/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "skipconv/error.hpp"
#include "skipconv/nn/layers.hpp"

namespace skipconv::net {

namespace {

constexpr std::size_t kPixels = dsp::kImageSize * dsp::kImageSize;

// Decorrelates the per-epoch shuffle streams from the initialization stream.
constexpr std::uint64_t kShuffleSalt = 0xD1B54A32D192ED03ULL;

std::vector<double> to_network(const dsp::SpectralImage& img) {
  std::vector<double> out(kPixels);
  for (std::size_t i = 0; i < kPixels; ++i) out[i] = img.norm.to_network(img.pixels[i]);
  return out;
}

}  // namespace

ImagePair to_image_pair(const dsp::SpectralImage& input, const dsp::SpectralImage& target) {
  if (input.pixels.size() != kPixels || target.pixels.size() != kPixels) {
    throw ShapeError("image pair: images must be " + std::to_string(dsp::kImageSize) +
                     "x" + std::to_string(dsp::kImageSize));
  }
  return {to_network(input), to_network(target)};
}

std::pair<nn::Tensor, nn::Tensor> assemble_batch(const std::vector<ImagePair>& data,
                                                 const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw ShapeError("assemble_batch: empty batch");
  const nn::Shape shape{indices.size(), 1, dsp::kImageSize, dsp::kImageSize};
  nn::Tensor x(shape);
  nn::Tensor y(shape);
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const ImagePair& pair = data.at(indices[b]);
    if (pair.input.size() != kPixels || pair.target.size() != kPixels) {
      throw ShapeError("assemble_batch: example " + std::to_string(indices[b]) +
                       " is not a full image");
    }
    std::copy(pair.input.begin(), pair.input.end(), x.ptr() + b * kPixels);
    std::copy(pair.target.begin(), pair.target.end(), y.ptr() + b * kPixels);
  }
  return {std::move(x), std::move(y)};
}

double train_step(TrainingState& state, const nn::Tensor& input, const nn::Tensor& target) {
  SkipConvNet& net = state.net;
  const nn::Tensor pred = net.forward(input, true);
  const double loss = nn::mse_loss(pred, target);
  if (!std::isfinite(loss)) {
    net.clear_cache();
    throw NumericalError("training diverged: loss " + std::to_string(loss) +
                         " at epoch " + std::to_string(state.epoch + 1) + ", step " +
                         std::to_string(state.step_loss.size() + 1));
  }
  net.zero_grad();
  net.backward(nn::mse_loss_backward(pred, target));
  std::vector<nn::Tensor*> params;
  for (const NamedTensor& p : net.parameters()) params.push_back(p.tensor);
  try {
    nn::adam_step(params, state.adam);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " at epoch " +
                         std::to_string(state.epoch + 1) + ", step " +
                         std::to_string(state.step_loss.size() + 1));
  }
  state.step_loss.push_back(loss);
  return loss;
}

std::vector<std::size_t> epoch_order(std::size_t count, std::uint64_t seed,
                                     std::uint64_t epoch) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed ^ (kShuffleSalt * (epoch + 1)));
  // Fisher-Yates with explicit draws; std::shuffle is not specified
  // bit-for-bit across standard libraries.
  for (std::size_t i = count; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<std::vector<std::size_t>> make_batches(const std::vector<std::size_t>& order,
                                                   std::size_t batch) {
  if (batch == 0) throw ConfigError("batch size must be positive");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < order.size(); i += batch) {
    const std::size_t end = std::min(order.size(), i + batch);
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  if (out.size() > 1 && out.back().size() == 1) {
    out[out.size() - 2].push_back(out.back().front());
    out.pop_back();
  }
  return out;
}

void train(TrainingState& state, const std::vector<ImagePair>& data, const TrainConfig& cfg) {
  if (data.size() < 2) {
    throw DataError("train: need at least 2 images for batch statistics, got " +
                    std::to_string(data.size()));
  }
  if (cfg.batch == 0) throw ConfigError("train: batch size must be positive");
  while (state.epoch < cfg.epochs) {
    const auto batches = make_batches(epoch_order(data.size(), state.seed, state.epoch),
                                      cfg.batch);
    double sum = 0.0;
    for (const auto& indices : batches) {
      const auto [x, y] = assemble_batch(data, indices);
      sum += train_step(state, x, y);
    }
    state.epoch += 1;
    const double mean = sum / static_cast<double>(batches.size());
    state.epoch_loss.push_back(mean);
    if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, state);
    if (cfg.on_epoch) cfg.on_epoch({state.epoch, batches.size(), mean});
  }
}

dsp::LogPowerSpectrogram enhance(SkipConvNet& net, const dsp::LogPowerSpectrogram& lps,
                                 std::size_t batch) {
  if (batch == 0) throw ConfigError("enhance: batch size must be positive");
  if (net.config().input_size != dsp::kImageSize) {
    throw ConfigError("enhance: network expects " +
                      std::to_string(net.config().input_size) + "-pixel images, tiles are " +
                      std::to_string(dsp::kImageSize));
  }
  std::vector<dsp::SpectralImage> images = dsp::tile(lps);
  const double floor_db = lps.floor_db;
  for (std::size_t start = 0; start < images.size(); start += batch) {
    const std::size_t count = std::min(batch, images.size() - start);
    nn::Tensor x({count, 1, dsp::kImageSize, dsp::kImageSize});
    for (std::size_t b = 0; b < count; ++b) {
      const std::vector<double> v = to_network(images[start + b]);
      std::copy(v.begin(), v.end(), x.ptr() + b * kPixels);
    }
    const nn::Tensor y = net.forward(x, false);
    if (!y.all_finite()) {
      throw NumericalError("enhance: network produced non-finite output");
    }
    for (std::size_t b = 0; b < count; ++b) {
      dsp::SpectralImage& img = images[start + b];
      for (std::size_t i = 0; i < kPixels; ++i) {
        img.pixels[i] = std::max(floor_db, img.norm.to_db(y[b * kPixels + i]));
      }
    }
  }
  return dsp::untile(images, lps.values_db.frames, lps.values_db.bins, floor_db);
}

}  // namespace skipconv::net
