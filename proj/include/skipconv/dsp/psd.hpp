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

#include "skipconv/dsp/stft.hpp"

// Power-spectral-density smoothing with a time-varying, frequency-dependent
// smoothing parameter driven by a minimum-statistics noise-floor tracker.
namespace skipconv::dsp {

// Simplified minimum statistics: a fixed-alpha pre-smoothing, a sliding
// per-bin minimum, and a constant bias compensation factor. The full
// bias-correction machinery of the original estimator is not modelled.
struct NoiseTrackerConfig {
  std::size_t window_frames = 96;  // ~0.77 s at an 8 ms hop
  double bias_comp = 1.5;
  double pre_alpha = 0.85;
};

struct NoisePsdEstimate {
  SpectralGrid values;
  std::size_t window_frames = 0;
  double bias_comp = 1.0;
};

// Per-bin minimum of the pre-smoothed power over the last `window_frames`
// frames (fewer at the start), times bias_comp.
NoisePsdEstimate estimate_noise_psd(const SpectralGrid& power,
                                    const NoiseTrackerConfig& cfg = {});

struct SmoothingConfig {
  double alpha_min = 0.30;
  double alpha_max = 0.96;
  double noise_floor = 1e-12;  // guards the division by the noise PSD
};

struct SmoothedPsd {
  SpectralGrid values;
  SpectralGrid alpha_map;  // clamped smoothing parameter per (t, f)
};

// Unclamped optimal smoothing parameter 1 / (1 + (prev / noise - 1)^2).
double optimal_alpha(double previous_psd, double noise_psd);

// P(0,f) = |X(0,f)|^2 and for t >= 1
//   P(t,f) = a(t,f) P(t-1,f) + (1 - a(t,f)) |X(t,f)|^2
// with a(t,f) = clamp(optimal_alpha(P(t-1,f), noise(t,f))). Row 0 of the
// alpha map is evaluated with P(-1,f) taken as |X(0,f)|^2, which leaves
// P(0,f) unchanged.
SmoothedPsd optimal_smooth(const SpectralGrid& power,
                           const NoisePsdEstimate& noise,
                           const SmoothingConfig& cfg = {});

inline constexpr double kLogPowerFloorDb = -80.0;

struct LogPowerSpectrogram {
  SpectralGrid values_db;
  double floor_db = kLogPowerFloorDb;
};

// 10 log10(max(p, 10^(floor/10))). Values above the floor are exactly
// 10 log10(p).
LogPowerSpectrogram to_log_power(const SpectralGrid& psd,
                                 double floor_db = kLogPowerFloorDb);

}  // namespace skipconv::dsp
