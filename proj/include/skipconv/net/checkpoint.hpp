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

#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipconv/net/skipconvnet.hpp"
#include "skipconv/nn/adam.hpp"
#include "skipconv/nn/tensor_archive.hpp"

namespace skipconv::net {

// Everything needed to resume training: network, optimizer moments, seed,
// completed epochs and the loss history so far.
struct TrainingState {
  TrainingState(const NetworkConfig& cfg, std::uint64_t seed,
                const nn::AdamConfig& adam_cfg = {});

  SkipConvNet net;
  nn::AdamState adam;
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
  std::vector<double> step_loss;
  std::vector<double> epoch_loss;
  nlohmann::json metadata = nlohmann::json::object();  // caller-defined
};

// Archive layout: JSON header (network config, seed, epoch, optimizer
// settings and step count) followed by the tensors
//   <parameter name>, <buffer name>, adam.m.<parameter>, adam.v.<parameter>,
//   trace.step_loss, trace.epoch_loss
nn::TensorArchive to_archive(const TrainingState& state);
TrainingState from_archive(const nn::TensorArchive& archive);

// Atomic write (temp file then rename).
void save_checkpoint(const std::filesystem::path& path, const TrainingState& state);
TrainingState load_checkpoint(const std::filesystem::path& path);

}  // namespace skipconv::net
