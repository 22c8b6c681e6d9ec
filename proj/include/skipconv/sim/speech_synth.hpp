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

#include "skipconv/dsp/audio.hpp"

namespace skipconv::sim {

struct SpeechSynthConfig {
  double f0_min = 90.0;
  double f0_max = 230.0;
  double peak = 0.5;
};

// Seeded speech-like utterance: voiced syllables built from harmonic series
// with pitch drift under moving formant envelopes, fricative noise bursts,
// and pauses.
dsp::AudioBuffer synth_speech(double seconds, std::uint64_t seed,
                              int sample_rate = dsp::kDefaultSampleRate,
                              const SpeechSynthConfig& cfg = {});

}  // namespace skipconv::sim
