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

#include "skipconv/dsp/psd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::dsp {

NoisePsdEstimate estimate_noise_psd(const SpectralGrid& power,
                                    const NoiseTrackerConfig& cfg) {
  if (cfg.window_frames < 2) {
    throw ConfigError("noise tracker: window must span at least 2 frames");
  }
  if (cfg.bias_comp < 1.0) {
    throw ConfigError("noise tracker: bias compensation must be >= 1");
  }
  NoisePsdEstimate est{SpectralGrid(power.frames, power.bins),
                       cfg.window_frames, cfg.bias_comp};
  std::vector<double> smooth(power.frames);
  std::deque<std::size_t> window;  // indices of increasing smoothed power
  for (std::size_t f = 0; f < power.bins; ++f) {
    window.clear();
    for (std::size_t t = 0; t < power.frames; ++t) {
      smooth[t] = t == 0 ? power.at(0, f)
                         : cfg.pre_alpha * smooth[t - 1] +
                               (1.0 - cfg.pre_alpha) * power.at(t, f);
      while (!window.empty() && smooth[window.back()] >= smooth[t]) {
        window.pop_back();
      }
      window.push_back(t);
      if (window.front() + cfg.window_frames <= t) window.pop_front();
      est.values.at(t, f) = cfg.bias_comp * smooth[window.front()];
    }
  }
  return est;
}

double optimal_alpha(double previous_psd, double noise_psd) {
  const double d = previous_psd / noise_psd - 1.0;
  return 1.0 / (1.0 + d * d);
}

SmoothedPsd optimal_smooth(const SpectralGrid& power,
                           const NoisePsdEstimate& noise,
                           const SmoothingConfig& cfg) {
  if (!power.same_extent(noise.values)) {
    throw ShapeError("optimal_smooth: power grid " +
                     std::to_string(power.frames) + "x" +
                     std::to_string(power.bins) + " vs noise grid " +
                     std::to_string(noise.values.frames) + "x" +
                     std::to_string(noise.values.bins));
  }
  if (!(cfg.alpha_min >= 0.0 && cfg.alpha_min <= cfg.alpha_max &&
        cfg.alpha_max < 1.0)) {
    throw ConfigError("optimal_smooth: need 0 <= alpha_min <= alpha_max < 1");
  }
  SmoothedPsd out{SpectralGrid(power.frames, power.bins),
                  SpectralGrid(power.frames, power.bins)};
  if (power.frames == 0) return out;
  for (std::size_t f = 0; f < power.bins; ++f) {
    double previous = power.at(0, f);
    for (std::size_t t = 0; t < power.frames; ++t) {
      const double sigma = std::max(noise.values.at(t, f), cfg.noise_floor);
      const double alpha = std::clamp(optimal_alpha(previous, sigma),
                                      cfg.alpha_min, cfg.alpha_max);
      const double p = t == 0 ? power.at(0, f)
                              : alpha * previous + (1.0 - alpha) * power.at(t, f);
      out.alpha_map.at(t, f) = alpha;
      out.values.at(t, f) = p;
      previous = p;
    }
  }
  return out;
}

LogPowerSpectrogram to_log_power(const SpectralGrid& psd, double floor_db) {
  const double floor_power = std::pow(10.0, floor_db / 10.0);
  LogPowerSpectrogram lps{SpectralGrid(psd.frames, psd.bins), floor_db};
  for (std::size_t i = 0; i < psd.values.size(); ++i) {
    const double p = psd.values[i];
    if (p < 0.0 || !std::isfinite(p)) {
      throw DataError("to_log_power: power must be finite and non-negative");
    }
    lps.values_db.values[i] =
        p > floor_power ? std::max(floor_db, 10.0 * std::log10(p)) : floor_db;
  }
  return lps;
}

}  // namespace skipconv::dsp
