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

#include "skipconv/sim/reverb.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::sim {
namespace {

constexpr std::uint64_t kNoiseSeedSalt = 0x9E3779B97F4A7C15ULL;

std::size_t tail_length(double t60, int sample_rate) {
  // Guard against products like 0.3 * 16000 landing a hair above an integer.
  return static_cast<std::size_t>(std::ceil(t60 * sample_rate - 1e-9));
}

}  // namespace

double decay_envelope(double seconds, double t60) {
  return std::exp(-3.0 * std::log(10.0) * seconds / t60);
}

Rir synth_rir(double t60, std::size_t direct_delay, std::uint64_t seed,
              int sample_rate, double direct_to_reverb_db) {
  if (!(t60 > 0.0) || !std::isfinite(t60)) {
    throw ConfigError("synth_rir: t60 must be positive, got " +
                      std::to_string(t60));
  }
  if (sample_rate <= 0) {
    throw ConfigError("synth_rir: sample rate must be positive");
  }
  if (!std::isfinite(direct_to_reverb_db)) {
    throw ConfigError("synth_rir: direct-to-reverberant ratio must be finite");
  }
  const std::size_t n_tail = std::max<std::size_t>(1, tail_length(t60, sample_rate));
  Rir rir;
  rir.t60 = t60;
  rir.direct_delay = direct_delay;
  rir.sample_rate = sample_rate;
  rir.taps.assign(n_tail + direct_delay, 0.0);
  rir.taps[direct_delay] = 1.0;

  // Tail start amplitude from the ratio at the reference T60.
  const std::size_t n_ref = tail_length(kDrrReferenceT60, sample_rate);
  double ref_energy = 0.0;
  for (std::size_t k = 1; k < n_ref; ++k) {
    const double e = decay_envelope(static_cast<double>(k) / sample_rate,
                                    kDrrReferenceT60);
    ref_energy += e * e;
  }
  const double gain =
      std::sqrt(std::pow(10.0, -direct_to_reverb_db / 10.0) / ref_energy);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 1; k < n_tail; ++k) {
    rir.taps[direct_delay + k] =
        gain * normal(rng) *
        decay_envelope(static_cast<double>(k) / sample_rate, t60);
  }
  return rir;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::vector<double>& longer = a.size() >= b.size() ? a : b;
  const std::vector<double>& shorter = a.size() >= b.size() ? b : a;
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  const std::size_t n = longer.size();
  for (std::size_t j = 0; j < shorter.size(); ++j) {
    const double coef = shorter[j];
    if (coef == 0.0) continue;
    double* dst = out.data() + j;
    const double* src = longer.data();
    for (std::size_t i = 0; i < n; ++i) dst[i] += coef * src[i];
  }
  return out;
}

Reverberated apply_rir_with_gain(const AudioBuffer& clean, const Rir& rir) {
  dsp::validate(clean);
  if (clean.sample_rate != rir.sample_rate) {
    throw DataError("apply_rir: audio at " + std::to_string(clean.sample_rate) +
                    " Hz but RIR at " + std::to_string(rir.sample_rate) + " Hz");
  }
  Reverberated out;
  out.audio.sample_rate = clean.sample_rate;
  out.audio.samples = convolve(clean.samples, rir.taps);
  const double p = dsp::peak(out.audio);
  if (p > kPeakLimit) {
    out.gain = kPeakLimit / p;
    for (double& s : out.audio.samples) s *= out.gain;
  }
  return out;
}

AudioBuffer apply_rir(const AudioBuffer& clean, const Rir& rir) {
  return apply_rir_with_gain(clean, rir).audio;
}

AudioBuffer add_noise(const AudioBuffer& signal, double snr, std::uint64_t seed) {
  dsp::validate(signal);
  if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity()) {
    throw ConfigError("add_noise: SNR must be a number or +inf, got " +
                      std::to_string(snr));
  }
  if (snr == kNoNoise) return signal;
  const double es = dsp::energy(signal);
  if (es == 0.0) {
    throw DataError("add_noise: signal has zero energy, SNR is undefined");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(signal.size());
  double en = 0.0;
  for (double& n : noise) {
    n = normal(rng);
    en += n * n;
  }
  const double scale = std::sqrt(es / std::pow(10.0, snr / 10.0) / en);
  AudioBuffer out = signal;
  for (std::size_t i = 0; i < noise.size(); ++i) out.samples[i] += scale * noise[i];
  return out;
}

double snr_db(const AudioBuffer& signal, const AudioBuffer& noisy) {
  if (signal.size() != noisy.size()) {
    throw ShapeError("snr_db: lengths differ (" + std::to_string(signal.size()) +
                     " vs " + std::to_string(noisy.size()) + ")");
  }
  double es = 0.0, en = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double d = noisy.samples[i] - signal.samples[i];
    es += signal.samples[i] * signal.samples[i];
    en += d * d;
  }
  return 10.0 * std::log10(es / en);
}

Pair make_pair(const AudioBuffer& clean, const MixSpec& mix) {
  Pair pair;
  pair.rir = synth_rir(mix.t60, mix.direct_delay, mix.seed, clean.sample_rate,
                       mix.direct_to_reverb_db);
  const Reverberated rev = apply_rir_with_gain(clean, pair.rir);
  pair.reverberant = add_noise(rev.audio, mix.snr_db, mix.seed ^ kNoiseSeedSalt);
  pair.clean.sample_rate = clean.sample_rate;
  pair.clean.samples.assign(rev.audio.size(), 0.0);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    pair.clean.samples[mix.direct_delay + i] = rev.gain * clean.samples[i];
  }
  return pair;
}

}  // namespace skipconv::sim
