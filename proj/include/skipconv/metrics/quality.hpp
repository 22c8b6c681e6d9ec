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

#include "skipconv/dsp/audio.hpp"

namespace skipconv::metrics {

using dsp::AudioBuffer;

struct MetricConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  std::size_t lpc_order = 12;
  double silence_db = 40.0;  // frames this far below the loudest are skipped
  double cd_max = 10.0;
  double llr_max = 2.0;
  double llr_keep = 0.95;  // fraction of lowest-LLR frames averaged
  std::size_t bands = 23;
  double band_gamma = 0.2;
  double snr_min = -10.0;
  double snr_max = 35.0;
};

struct MetricValue {
  double value = 0.0;
  std::size_t frames = 0;
};

struct MetricReport {
  double cd = 0.0;
  double llr = 0.0;
  double fwsegsnr = 0.0;
  std::size_t cd_frames = 0;
  std::size_t llr_frames = 0;
  std::size_t fwsegsnr_frames = 0;
};

// Intrusive measures; reference first. Inputs are trimmed to the shorter
// length; rates must match.
MetricValue cepstral_distance(const AudioBuffer& reference,
                              const AudioBuffer& test,
                              const MetricConfig& cfg = {});
MetricValue log_likelihood_ratio(const AudioBuffer& reference,
                                 const AudioBuffer& test,
                                 const MetricConfig& cfg = {});
MetricValue fwsegsnr(const AudioBuffer& reference, const AudioBuffer& test,
                     const MetricConfig& cfg = {});

MetricReport evaluate(const AudioBuffer& reference, const AudioBuffer& test,
                      const MetricConfig& cfg = {});

// Triangular mel filterbank over fft_len / 2 + 1 bins, one row per band.
std::vector<std::vector<double>> mel_filterbank(std::size_t bands,
                                                std::size_t fft_len,
                                                int sample_rate);

}  // namespace skipconv::metrics
