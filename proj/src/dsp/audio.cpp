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

#include "skipconv/dsp/audio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::dsp {

double energy(const AudioBuffer& audio) {
  double e = 0.0;
  for (double s : audio.samples) e += s * s;
  return e;
}

double peak(const AudioBuffer& audio) {
  double p = 0.0;
  for (double s : audio.samples) p = std::max(p, std::abs(s));
  return p;
}

void validate(const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) {
    throw DataError("audio: sample rate must be positive, got " +
                    std::to_string(audio.sample_rate));
  }
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    if (!std::isfinite(audio.samples[i])) {
      throw DataError("audio: non-finite sample at index " + std::to_string(i));
    }
  }
}

void require_same_rate(const AudioBuffer& a, const AudioBuffer& b) {
  if (a.sample_rate != b.sample_rate) {
    throw DataError("sample rate mismatch: " + std::to_string(a.sample_rate) +
                    " Hz vs " + std::to_string(b.sample_rate) +
                    " Hz (resampling is not supported)");
  }
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return 0.0;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace skipconv::dsp
