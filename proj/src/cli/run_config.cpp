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
#include "skipconv/cli/run_config.hpp"

#include <cmath>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::cli {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_jobs(std::size_t jobs) { require(jobs >= 1, "--jobs must be at least 1"); }

}  // namespace

void validate(const FeatureConfig& cfg) {
  require(cfg.frame_len >= 2 * 256 && cfg.frame_len % 2 == 0,
          "frame length must be even and give at least 256 frequency bins");
  require(cfg.hop > 0 && cfg.hop <= cfg.frame_len, "hop must be in [1, frame length]");
  require(cfg.alpha_min >= 0.0 && cfg.alpha_min <= cfg.alpha_max && cfg.alpha_max < 1.0,
          "smoothing clamp must satisfy 0 <= alpha_min <= alpha_max < 1");
  require(cfg.noise_window >= 1, "noise window must be at least one frame");
  require(cfg.noise_bias > 0.0 && std::isfinite(cfg.noise_bias), "noise bias must be positive");
  require(cfg.noise_pre_alpha >= 0.0 && cfg.noise_pre_alpha < 1.0,
          "noise pre-smoothing must be in [0, 1)");
}

nlohmann::json to_json(const FeatureConfig& cfg) {
  return {{"frame_len", cfg.frame_len},       {"hop", cfg.hop},
          {"smoothing", cfg.smoothing},       {"alpha_min", cfg.alpha_min},
          {"alpha_max", cfg.alpha_max},       {"noise_window", cfg.noise_window},
          {"noise_bias", cfg.noise_bias},     {"noise_pre_alpha", cfg.noise_pre_alpha}};
}

FeatureConfig feature_config_from_json(const nlohmann::json& j) {
  FeatureConfig cfg;
  try {
    cfg.frame_len = j.at("frame_len").get<std::size_t>();
    cfg.hop = j.at("hop").get<std::size_t>();
    cfg.smoothing = j.at("smoothing").get<bool>();
    cfg.alpha_min = j.at("alpha_min").get<double>();
    cfg.alpha_max = j.at("alpha_max").get<double>();
    cfg.noise_window = j.at("noise_window").get<std::size_t>();
    cfg.noise_bias = j.at("noise_bias").get<double>();
    cfg.noise_pre_alpha = j.at("noise_pre_alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("feature settings: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

void validate(const SimulateConfig& cfg) {
  require(!cfg.out_dir.empty(), "simulate: --out is required");
  require(cfg.count >= 1, "simulate: --count must be at least 1");
  require(cfg.seconds >= 0.5 && std::isfinite(cfg.seconds),
          "simulate: --seconds must be at least 0.5");
  require(!cfg.t60s.empty(), "simulate: --t60 needs at least one value");
  for (double t : cfg.t60s) {
    require(t > 0.0 && t <= 3.0, "simulate: T60 values must lie in (0, 3] s");
  }
  require(!std::isnan(cfg.snr_db), "simulate: --snr must be a number");
  require(std::isfinite(cfg.direct_to_reverb_db), "simulate: --drr must be finite");
  require(cfg.sample_rate >= 8000, "simulate: sample rate must be at least 8000");
  require_jobs(cfg.jobs);
}

void validate(const PreprocessConfig& cfg) {
  require(!cfg.manifest.empty(), "preprocess: --manifest is required");
  require(!cfg.out.empty(), "preprocess: --out is required");
  validate(cfg.features);
  require_jobs(cfg.jobs);
}

void validate(const TrainRunConfig& cfg) {
  require(!cfg.archive.empty(), "train: --archive is required");
  require(!cfg.out.empty(), "train: --out is required");
  require(cfg.epochs >= 1, "train: --epochs must be at least 1");
  require(cfg.batch >= 2, "train: --batch must be at least 2");
  require(cfg.lr > 0.0 && std::isfinite(cfg.lr), "train: --lr must be positive");
  require(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0 && cfg.beta2 >= 0.0 && cfg.beta2 < 1.0,
          "train: Adam betas must lie in [0, 1)");
  require(cfg.adam_eps > 0.0, "train: Adam eps must be positive");
}

void validate(const EnhanceConfig& cfg) {
  require(!cfg.checkpoint.empty(), "enhance: --checkpoint is required");
  const bool single = !cfg.input.empty() || !cfg.output.empty();
  const bool batch = !cfg.manifest.empty() || !cfg.out_dir.empty();
  require(single != batch,
          "enhance: give either --input/--output or --manifest/--out-dir");
  if (single) require(!cfg.input.empty() && !cfg.output.empty(),
                      "enhance: --input and --output go together");
  if (batch) require(!cfg.manifest.empty() && !cfg.out_dir.empty(),
                     "enhance: --manifest and --out-dir go together");
  require(cfg.batch >= 1, "enhance: --batch must be at least 1");
  require_jobs(cfg.jobs);
}

void validate(const EvaluateConfig& cfg) {
  require(!cfg.manifest.empty(), "evaluate: --manifest is required");
  const metrics::MetricConfig& m = cfg.metrics;
  require(m.frame_ms > 0.0 && m.hop_ms > 0.0, "evaluate: frame and hop must be positive");
  require(m.lpc_order >= 1, "evaluate: LPC order must be positive");
  require(m.snr_min < m.snr_max, "evaluate: SNR clamp must be increasing");
  require(m.llr_keep > 0.0 && m.llr_keep <= 1.0, "evaluate: LLR keep fraction in (0, 1]");
  require(m.bands >= 1, "evaluate: band count must be positive");
  require_jobs(cfg.jobs);
}

}  // namespace skipconv::cli
