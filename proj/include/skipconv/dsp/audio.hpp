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
#include <vector>

namespace skipconv::dsp {

inline constexpr int kDefaultSampleRate = 16000;

// Mono PCM samples, nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kDefaultSampleRate;

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

double energy(const AudioBuffer& audio);
double peak(const AudioBuffer& audio);
// Throws DataError for a non-positive rate or non-finite samples.
void validate(const AudioBuffer& audio);
// Throws DataError naming both rates when they differ.
void require_same_rate(const AudioBuffer& a, const AudioBuffer& b);

// Pearson correlation over the common prefix.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace skipconv::dsp
