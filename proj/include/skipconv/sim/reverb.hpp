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
#include <limits>
#include <vector>

#include "skipconv/dsp/audio.hpp"

namespace skipconv::sim {

using dsp::AudioBuffer;

// Room impulse response: unit direct tap at direct_delay followed by an
// exponentially decaying Gaussian tail.
struct Rir {
  std::vector<double> taps;
  double t60 = 0.0;
  std::size_t direct_delay = 0;
  int sample_rate = dsp::kDefaultSampleRate;
};

// Direct-to-reverberant ratio is specified at this T60; the tail start
// amplitude is held fixed so reverberant energy grows linearly with T60.
inline constexpr double kDrrReferenceT60 = 0.5;
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();
inline constexpr double kPeakLimit = 0.99;

struct MixSpec {
  double snr_db = 20.0;
  std::uint64_t seed = 0;
  double t60 = 0.3;
  double direct_to_reverb_db = 0.0;
  std::size_t direct_delay = 48;
};

// Amplitude envelope exp(-3 ln(10) t / t60).
double decay_envelope(double seconds, double t60);

Rir synth_rir(double t60, std::size_t direct_delay, std::uint64_t seed,
              int sample_rate = dsp::kDefaultSampleRate,
              double direct_to_reverb_db = 0.0);

// Full linear convolution, length a + b - 1.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

struct Reverberated {
  AudioBuffer audio;
  double gain = 1.0;  // peak normalization applied after convolution
};

Reverberated apply_rir_with_gain(const AudioBuffer& clean, const Rir& rir);
AudioBuffer apply_rir(const AudioBuffer& clean, const Rir& rir);

// White Gaussian noise rescaled so the realized SNR equals snr_db.
AudioBuffer add_noise(const AudioBuffer& signal, double snr_db,
                      std::uint64_t seed);

double snr_db(const AudioBuffer& signal, const AudioBuffer& noisy);

struct Pair {
  AudioBuffer reverberant;
  AudioBuffer clean;  // delayed by direct_delay and level-matched
  Rir rir;
};

Pair make_pair(const AudioBuffer& clean, const MixSpec& mix);

}  // namespace skipconv::sim
