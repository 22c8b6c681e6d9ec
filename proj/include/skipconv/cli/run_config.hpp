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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipconv/dsp/psd.hpp"
#include "skipconv/metrics/quality.hpp"

namespace skipconv::cli {

// Front end shared by preprocess and enhance. The same settings travel
// inside image archives and checkpoints so enhancement matches training.
struct FeatureConfig {
  std::size_t frame_len = 512;
  std::size_t hop = 128;
  bool smoothing = true;
  double alpha_min = 0.30;
  double alpha_max = 0.96;
  std::size_t noise_window = 96;
  double noise_bias = 1.5;
  double noise_pre_alpha = 0.85;

  bool operator==(const FeatureConfig&) const = default;
};

void validate(const FeatureConfig& cfg);
nlohmann::json to_json(const FeatureConfig& cfg);
FeatureConfig feature_config_from_json(const nlohmann::json& j);

struct SimulateConfig {
  std::filesystem::path out_dir;
  std::size_t count = 10;
  double seconds = 4.0;
  std::vector<double> t60s = {0.3, 0.6};
  double snr_db = 20.0;
  double direct_to_reverb_db = 0.0;
  std::size_t direct_delay = 48;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

struct PreprocessConfig {
  std::filesystem::path manifest;
  std::filesystem::path out;
  FeatureConfig features;
  std::size_t jobs = 1;
};

struct TrainRunConfig {
  std::filesystem::path archive;
  std::filesystem::path out;
  std::filesystem::path resume;  // empty: fresh start
  std::string preset = "desk";
  bool baseline = false;  // drop every skip block
  std::size_t epochs = 10;
  std::size_t batch = 8;
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 1;
};

struct EnhanceConfig {
  std::filesystem::path checkpoint;
  std::filesystem::path input;     // single-file mode
  std::filesystem::path output;
  std::filesystem::path manifest;  // batch mode
  std::filesystem::path out_dir;
  std::filesystem::path dump_dir;  // graymap panels, empty: none
  std::size_t batch = 8;
  std::size_t jobs = 1;
};

struct EvaluateConfig {
  std::filesystem::path manifest;
  std::filesystem::path out;  // JSON report, empty: stdout table only
  metrics::MetricConfig metrics;
  std::size_t jobs = 1;
};

void validate(const SimulateConfig& cfg);
void validate(const PreprocessConfig& cfg);
void validate(const TrainRunConfig& cfg);
void validate(const EnhanceConfig& cfg);
void validate(const EvaluateConfig& cfg);

}  // namespace skipconv::cli
