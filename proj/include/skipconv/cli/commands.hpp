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
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipconv/cli/manifest.hpp"
#include "skipconv/cli/run_config.hpp"
#include "skipconv/dsp/audio.hpp"
#include "skipconv/dsp/spectral_image.hpp"
#include "skipconv/dsp/stft.hpp"
#include "skipconv/net/checkpoint.hpp"
#include "skipconv/nn/tensor_archive.hpp"

namespace skipconv::cli {

struct Features {
  dsp::ComplexSpectrogram spectrum;
  dsp::LogPowerSpectrogram lps;  // smoothed when cfg.smoothing
};

// Front end shared by inputs and training targets: the clean side of a pair
// goes through the same analysis as the reverberant side.
dsp::StftConfig stft_config(const FeatureConfig& cfg);
Features analyze(const dsp::AudioBuffer& audio, const FeatureConfig& cfg);

// Paired spectral images with their provenance in the source manifest.
struct ImageSet {
  struct Entry {
    std::string id;
    std::size_t offset = 0;
    std::size_t valid_frames = 0;
  };
  FeatureConfig features;
  std::vector<Entry> entries;
  std::vector<dsp::SpectralImage> inputs;
  std::vector<dsp::SpectralImage> targets;
};

// Archive layout: JSON header {format, features, images: [{id, offset,
// valid_frames}]} and tensors input.NNNNN / target.NNNNN of shape
// (256, 256) holding dB values.
nn::TensorArchive to_archive(const ImageSet& set);
ImageSet image_set_from_archive(const nn::TensorArchive& archive);
ImageSet read_image_set(const std::filesystem::path& path);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Exceptions are
// rethrown for the lowest failing index, so errors do not depend on the
// schedule.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

Manifest cmd_simulate(const SimulateConfig& cfg);
ImageSet cmd_preprocess(const PreprocessConfig& cfg);
net::TrainingState cmd_train(const TrainRunConfig& cfg, std::ostream& log);

struct EnhanceOutput {
  dsp::AudioBuffer audio;  // same length as the input
  dsp::LogPowerSpectrogram reverberant;
  dsp::LogPowerSpectrogram enhanced;
};

EnhanceOutput enhance_audio(net::SkipConvNet& net, const FeatureConfig& features,
                            const dsp::AudioBuffer& input, std::size_t batch = 8);
void cmd_enhance(const EnhanceConfig& cfg);

struct UtteranceScore {
  std::string id;
  double t60 = 0.0;
  metrics::MetricReport reverberant;
  std::optional<metrics::MetricReport> enhanced;
};

struct ConditionSummary {
  double t60 = 0.0;
  std::size_t count = 0;
  metrics::MetricReport reverberant;  // means
  std::optional<metrics::MetricReport> enhanced;
};

struct EvaluationReport {
  std::vector<UtteranceScore> utterances;
  std::vector<ConditionSummary> conditions;  // ascending t60
  ConditionSummary overall;  // t60 is NaN
};

nlohmann::ordered_json to_json(const EvaluationReport& report);
std::string format_table(const EvaluationReport& report);
EvaluationReport cmd_evaluate(const EvaluateConfig& cfg);

// Parses arguments, runs a subcommand and maps errors onto exit codes:
// 0 success, 1 usage or configuration, 2 data, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skipconv::cli
