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

#include <complex>
#include <cstddef>
#include <vector>

#include "skipconv/dsp/audio.hpp"

namespace skipconv::dsp {

// Periodic Hann window: w[n] = 0.5 - 0.5 cos(2 pi n / N).
std::vector<double> periodic_hann(std::size_t length);

struct StftConfig {
  std::size_t frame_len = 512;
  std::size_t hop = 128;  // frame_len - overlap, overlap 384
  std::vector<double> window = periodic_hann(512);

  std::size_t bins() const { return frame_len / 2 + 1; }
};

// Throws ConfigError unless hop > 0, the window length equals frame_len and
// the squared window overlap-adds to a constant at this hop.
void validate_stft_config(const StftConfig& cfg);

// Real T x F grid indexed (frame, bin), row-major by frame.
struct SpectralGrid {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<double> values;

  SpectralGrid() = default;
  SpectralGrid(std::size_t t, std::size_t f, double fill = 0.0)
      : frames(t), bins(f), values(t * f, fill) {}

  double& at(std::size_t t, std::size_t f) { return values[t * bins + f]; }
  double at(std::size_t t, std::size_t f) const { return values[t * bins + f]; }
  bool same_extent(const SpectralGrid& o) const {
    return frames == o.frames && bins == o.bins;
  }
};

struct ComplexSpectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;  // frame_len / 2 + 1
  std::vector<std::complex<double>> values;
  StftConfig config;
  int sample_rate = kDefaultSampleRate;

  std::complex<double>& at(std::size_t t, std::size_t f) {
    return values[t * bins + f];
  }
  const std::complex<double>& at(std::size_t t, std::size_t f) const {
    return values[t * bins + f];
  }
};

// T = 1 + floor((len - frame_len) / hop) frames of the one-sided spectrum.
// Inputs shorter than one frame are rejected.
ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& cfg = {});

// Weighted overlap-add with the analysis window as synthesis window,
// normalized by the overlapped squared window. Output length is
// (T - 1) * hop + frame_len.
AudioBuffer istft(const ComplexSpectrogram& spec);

// |X(t,f)|^2
SpectralGrid power_spectrum(const ComplexSpectrogram& spec);

}  // namespace skipconv::dsp
