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
#include <filesystem>
#include <functional>
#include <vector>

#include "skipconv/dsp/spectral_image.hpp"
#include "skipconv/net/checkpoint.hpp"

namespace skipconv::net {

// One training example in network units, kImageSize^2 values each.
struct ImagePair {
  std::vector<double> input;
  std::vector<double> target;
};

ImagePair to_image_pair(const dsp::SpectralImage& input, const dsp::SpectralImage& target);

// Stacks the selected pairs into (B, 1, 256, 256) input and target tensors.
std::pair<nn::Tensor, nn::Tensor> assemble_batch(const std::vector<ImagePair>& data,
                                                 const std::vector<std::size_t>& indices);

struct EpochReport {
  std::uint64_t epoch = 0;  // 1-based
  std::size_t steps = 0;
  double mean_loss = 0.0;
};

struct TrainConfig {
  std::size_t epochs = 10;  // total, counting epochs already in the state
  std::size_t batch = 8;
  std::filesystem::path checkpoint_path;  // empty: no checkpoints
  std::function<void(const EpochReport&)> on_epoch;
};

// One optimizer step on an MSE objective. Appends the loss to
// state.step_loss. Throws NumericalError on a non-finite loss.
double train_step(TrainingState& state, const nn::Tensor& input,
                  const nn::Tensor& target);

// Order of the examples in a given epoch; depends only on seed and epoch,
// so a resumed run replays the same sequence.
std::vector<std::size_t> epoch_order(std::size_t count, std::uint64_t seed,
                                     std::uint64_t epoch);

// Splits an epoch order into batches. A trailing batch of one joins the
// previous batch, since batch statistics of a single 1x1 map are degenerate.
std::vector<std::vector<std::size_t>> make_batches(const std::vector<std::size_t>& order,
                                                   std::size_t batch);

// Runs epochs state.epoch+1 .. cfg.epochs, recording per-step and per-epoch
// MSE and writing a checkpoint after each epoch.
void train(TrainingState& state, const std::vector<ImagePair>& data,
           const TrainConfig& cfg);

// tile -> normalize -> eval forward -> dB -> untile, floored at -80 dB.
// Output has the input's frame count and the 256 retained bins.
dsp::LogPowerSpectrogram enhance(SkipConvNet& net, const dsp::LogPowerSpectrogram& lps,
                                 std::size_t batch = 8);

}  // namespace skipconv::net
