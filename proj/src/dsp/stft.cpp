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

#include "skipconv/dsp/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "skipconv/dsp/fft.hpp"
#include "skipconv/error.hpp"

namespace skipconv::dsp {
namespace {

// Squared window summed over all shifts by `hop`, one period long.
std::vector<double> squared_overlap(const std::vector<double>& window,
                                    std::size_t hop) {
  std::vector<double> sum(hop, 0.0);
  for (std::size_t n = 0; n < window.size(); ++n) {
    sum[n % hop] += window[n] * window[n];
  }
  return sum;
}

}  // namespace

std::vector<double> periodic_hann(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                static_cast<double>(length));
  }
  return w;
}

void validate_stft_config(const StftConfig& cfg) {
  if (cfg.hop == 0) throw ConfigError("stft: hop must be positive");
  if (cfg.frame_len < 2) throw ConfigError("stft: frame length must be >= 2");
  if (cfg.window.size() != cfg.frame_len) {
    throw ConfigError("stft: window has " + std::to_string(cfg.window.size()) +
                      " taps, frame length is " +
                      std::to_string(cfg.frame_len));
  }
  if (cfg.hop > cfg.frame_len) {
    throw ConfigError("stft: hop exceeds frame length");
  }
  const auto sum = squared_overlap(cfg.window, cfg.hop);
  const auto [lo, hi] = std::minmax_element(sum.begin(), sum.end());
  if (*lo <= 0.0 || (*hi - *lo) > 1e-9 * *hi) {
    throw ConfigError(
        "stft: window does not satisfy constant overlap-add at hop " +
        std::to_string(cfg.hop));
  }
}

ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& cfg) {
  validate_stft_config(cfg);
  if (audio.samples.size() < cfg.frame_len) {
    throw DataError("stft: input of " + std::to_string(audio.samples.size()) +
                    " samples is shorter than one frame (" +
                    std::to_string(cfg.frame_len) + ")");
  }
  const std::size_t frames = 1 + (audio.samples.size() - cfg.frame_len) / cfg.hop;
  ComplexSpectrogram spec{frames, cfg.bins(),
                          std::vector<std::complex<double>>(frames * cfg.bins()),
                          cfg, audio.sample_rate};
  std::vector<double> frame(cfg.frame_len);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const double* src = audio.samples.data() + t * cfg.hop;
    for (std::size_t n = 0; n < cfg.frame_len; ++n) {
      frame[n] = src[n] * cfg.window[n];
    }
    const auto bins = rfft(frame, cfg.frame_len);
    for (std::size_t f = 0; f < spec.bins; ++f) spec.at(t, f) = bins[f];
  }
  return spec;
}

namespace {
constexpr double kWolaNormFloor = 1e-5;
}  // namespace

AudioBuffer istft(const ComplexSpectrogram& spec) {
  const StftConfig& cfg = spec.config;
  validate_stft_config(cfg);
  if (spec.bins != cfg.bins() || spec.values.size() != spec.frames * spec.bins) {
    throw ShapeError("istft: spectrogram has " + std::to_string(spec.bins) +
                     " bins, config expects " + std::to_string(cfg.bins()));
  }
  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  if (spec.frames == 0) return out;
  const std::size_t len = (spec.frames - 1) * cfg.hop + cfg.frame_len;
  out.samples.assign(len, 0.0);
  std::vector<double> norm(len, 0.0);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const auto frame = irfft(
        std::span(spec.values.data() + t * spec.bins, spec.bins), cfg.frame_len);
    double* dst = out.samples.data() + t * cfg.hop;
    double* nrm = norm.data() + t * cfg.hop;
    for (std::size_t n = 0; n < cfg.frame_len; ++n) {
      dst[n] += frame[n] * cfg.window[n];
      nrm[n] += cfg.window[n] * cfg.window[n];
    }
  }
  // The normalizer is floored at the edges so that modified spectra are not
  // amplified where only a window tail overlaps.
  const double floor = kWolaNormFloor *
                       *std::max_element(norm.begin(), norm.end());
  for (std::size_t i = 0; i < len; ++i) {
    out.samples[i] /= std::max(norm[i], floor);
  }
  return out;
}

SpectralGrid power_spectrum(const ComplexSpectrogram& spec) {
  SpectralGrid grid(spec.frames, spec.bins);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const double re = spec.values[i].real(), im = spec.values[i].imag();
    grid.values[i] = re * re + im * im;
  }
  return grid;
}

}  // namespace skipconv::dsp
