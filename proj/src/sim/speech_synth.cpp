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

#include "skipconv/sim/speech_synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "skipconv/error.hpp"

namespace skipconv::sim {
namespace {

struct Vowel {
  std::array<double, 4> formants;
};

constexpr std::array<double, 4> kFormantGain = {1.0, 0.55, 0.3, 0.15};
constexpr std::array<double, 4> kFormantWidth = {90.0, 120.0, 170.0, 250.0};

Vowel random_vowel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> f1(300.0, 850.0);
  std::uniform_real_distribution<double> f2(900.0, 2300.0);
  std::uniform_real_distribution<double> f3(2400.0, 3200.0);
  std::uniform_real_distribution<double> f4(3400.0, 4300.0);
  return {{f1(rng), f2(rng), f3(rng), f4(rng)}};
}

// Raised-cosine attack and release.
double envelope(std::size_t i, std::size_t n, std::size_t attack,
                std::size_t release) {
  if (i < attack) return 0.5 - 0.5 * std::cos(M_PI * i / attack);
  if (i + release >= n) {
    return 0.5 - 0.5 * std::cos(M_PI * static_cast<double>(n - i) / release);
  }
  return 1.0;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void voiced_syllable(std::vector<double>& out, std::size_t start, std::size_t n,
                     int sr, const SpeechSynthConfig& cfg,
                     std::mt19937_64& rng) {
  const Vowel from = random_vowel(rng);
  const Vowel to = random_vowel(rng);
  const double f0_start = uniform(rng, cfg.f0_min, cfg.f0_max);
  const double f0_end = std::clamp(f0_start * uniform(rng, 0.8, 1.2),
                                   cfg.f0_min, cfg.f0_max);
  const double vibrato_rate = uniform(rng, 4.0, 6.0);
  const double loudness = uniform(rng, 0.5, 1.0);
  const double nyquist_guard = 0.5 * sr - 200.0;
  const std::size_t max_harmonics =
      static_cast<std::size_t>(nyquist_guard / cfg.f0_min);
  std::vector<double> phase(max_harmonics);
  for (double& p : phase) p = uniform(rng, 0.0, 2.0 * M_PI);
  std::vector<double> amp(max_harmonics, 0.0);

  const std::size_t attack = std::max<std::size_t>(1, sr / 50);
  const std::size_t release = std::max<std::size_t>(1, sr / 25);
  constexpr std::size_t kBlock = 32;
  std::normal_distribution<double> breath(0.0, 0.02);
  double f0 = f0_start;
  for (std::size_t i = 0; i < n && start + i < out.size(); ++i) {
    const double x = static_cast<double>(i) / n;
    if (i % kBlock == 0) {
      f0 = (f0_start + (f0_end - f0_start) * x) *
           (1.0 + 0.01 * std::sin(2.0 * M_PI * vibrato_rate * i / sr));
      for (std::size_t h = 0; h < max_harmonics; ++h) {
        const double fh = f0 * (h + 1);
        if (fh > nyquist_guard) {
          amp[h] = 0.0;
          continue;
        }
        double a = 0.12 / (1.0 + fh / 400.0);  // glottal tilt
        for (std::size_t k = 0; k < kFormantGain.size(); ++k) {
          const double fk = from.formants[k] + (to.formants[k] - from.formants[k]) * x;
          const double d = (fh - fk) / kFormantWidth[k];
          a += kFormantGain[k] * std::exp(-0.5 * d * d);
        }
        amp[h] = a;
      }
    }
    double s = breath(rng);
    for (std::size_t h = 0; h < max_harmonics; ++h) {
      if (amp[h] == 0.0) continue;
      phase[h] += 2.0 * M_PI * f0 * (h + 1) / sr;
      s += amp[h] * std::sin(phase[h]);
    }
    out[start + i] += loudness * envelope(i, n, attack, release) * s;
  }
}

void fricative(std::vector<double>& out, std::size_t start, std::size_t n,
               int sr, std::mt19937_64& rng) {
  // Band-pass biquad over white noise.
  const double centre = std::min(uniform(rng, 2500.0, 6000.0), 0.4 * sr);
  const double q = uniform(rng, 1.0, 2.5);
  const double w0 = 2.0 * M_PI * centre / sr;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  const double b0 = alpha / a0, b2 = -alpha / a0;
  const double a1 = -2.0 * std::cos(w0) / a0, a2 = (1.0 - alpha) / a0;
  const double level = uniform(rng, 0.3, 0.8);
  std::normal_distribution<double> normal(0.0, 1.0);
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  const std::size_t ramp = std::max<std::size_t>(1, sr / 100);
  for (std::size_t i = 0; i < n && start + i < out.size(); ++i) {
    const double x0 = normal(rng);
    const double y0 = b0 * x0 + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x0;
    y2 = y1;
    y1 = y0;
    out[start + i] += level * envelope(i, n, ramp, ramp) * y0;
  }
}

std::size_t samples(double seconds, int sr) {
  return static_cast<std::size_t>(seconds * sr);
}

}  // namespace

dsp::AudioBuffer synth_speech(double seconds, std::uint64_t seed,
                              int sample_rate, const SpeechSynthConfig& cfg) {
  if (!(seconds > 0.0) || sample_rate <= 0) {
    throw ConfigError("synth_speech: duration and sample rate must be positive");
  }
  if (!(cfg.f0_min > 0.0) || cfg.f0_max < cfg.f0_min || !(cfg.peak > 0.0)) {
    throw ConfigError("synth_speech: invalid pitch range or peak");
  }
  std::mt19937_64 rng(seed);
  dsp::AudioBuffer audio;
  audio.sample_rate = sample_rate;
  audio.samples.assign(samples(seconds, sample_rate), 0.0);
  const std::size_t total = audio.samples.size();

  std::size_t pos = samples(uniform(rng, 0.06, 0.15), sample_rate);
  while (pos < total) {
    const int syllables = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int s = 0; s < syllables && pos < total; ++s) {
      if (uniform(rng, 0.0, 1.0) < 0.2) {
        const std::size_t n = samples(uniform(rng, 0.06, 0.15), sample_rate);
        fricative(audio.samples, pos, n, sample_rate, rng);
        pos += n;
      }
      const std::size_t n = samples(uniform(rng, 0.10, 0.28), sample_rate);
      voiced_syllable(audio.samples, pos, n, sample_rate, cfg, rng);
      pos += n + samples(uniform(rng, 0.02, 0.06), sample_rate);
    }
    pos += samples(uniform(rng, 0.10, 0.30), sample_rate);
  }

  const double p = dsp::peak(audio);
  if (p > 0.0) {
    for (double& v : audio.samples) v *= cfg.peak / p;
  }
  return audio;
}

}  // namespace skipconv::sim
