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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "skipconv/dsp/fft.hpp"
#include "skipconv/error.hpp"
#include "skipconv/metrics/lpc.hpp"
#include "skipconv/metrics/quality.hpp"
#include "skipconv/sim/reverb.hpp"
#include "skipconv/sim/speech_synth.hpp"

namespace skipconv::metrics {
namespace {

std::vector<double> white(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

// Solves the autocorrelation normal equations by Gaussian elimination.
std::vector<double> dense_lpc(const std::vector<double>& frame, std::size_t p) {
  std::vector<double> r(p + 1, 0.0);
  for (std::size_t k = 0; k <= p; ++k) {
    for (std::size_t n = k; n < frame.size(); ++n) r[k] += frame[n] * frame[n - k];
  }
  std::vector<std::vector<double>> m(p, std::vector<double>(p + 1));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) m[i][j] = r[i > j ? i - j : j - i];
    m[i][p] = -r[i + 1];
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t pivot = c;
    for (std::size_t i = c + 1; i < p; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[pivot][c])) pivot = i;
    }
    std::swap(m[c], m[pivot]);
    for (std::size_t i = 0; i < p; ++i) {
      if (i == c) continue;
      const double f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= p; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<double> a(p + 1, 1.0);
  for (std::size_t i = 0; i < p; ++i) a[i + 1] = m[i][p] / m[i][i];
  return a;
}

// log|1/A| on a dense grid, in natural-log units.
std::vector<double> log_envelope(const std::vector<double>& a, std::size_t n) {
  const auto spec = dsp::rfft(a, n);
  std::vector<double> out(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) out[k] = -std::log(std::abs(spec[k]));
  return out;
}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(2 * M_PI * i / (n - 1));
  return w;
}

AudioBuffer scaled(const AudioBuffer& a, double c) {
  AudioBuffer out = a;
  for (double& v : out.samples) v *= c;
  return out;
}

TEST(LpcTest, WhiteNoiseHasSmallCoefficients) {
  const auto x = white(16000, 1);
  const LpcResult r = lpc(x);
  ASSERT_EQ(r.a.size(), 13u);
  EXPECT_EQ(r.a[0], 1.0);
  for (std::size_t k = 1; k < r.a.size(); ++k) EXPECT_LT(std::abs(r.a[k]), 0.2);
  EXPECT_GT(r.error, 0.0);
}

TEST(LpcTest, RecoversFirstOrderAutoregression) {
  const auto e = white(16000, 2);
  std::vector<double> x(e.size());
  x[0] = e[0];
  for (std::size_t n = 1; n < x.size(); ++n) x[n] = 0.9 * x[n - 1] + e[n];
  const LpcResult r = lpc(x);
  EXPECT_NEAR(r.a[1], -0.9, 0.02);
}

TEST(LpcTest, ZeroFrameIsAnError) {
  const std::vector<double> zero(400, 0.0);
  EXPECT_THROW(lpc(zero), DataError);
}

TEST(LpcTest, LevinsonMatchesDenseSolve) {
  const AudioBuffer speech = sim::synth_speech(0.5, 3);
  const auto w = hamming(400);
  for (std::size_t start = 1600; start + 400 <= speech.size(); start += 800) {
    std::vector<double> frame(400);
    for (std::size_t i = 0; i < 400; ++i) frame[i] = speech.samples[start + i] * w[i];
    if (std::all_of(frame.begin(), frame.end(), [](double v) { return std::abs(v) < 1e-6; })) continue;
    const auto oracle = dense_lpc(frame, 12);
    const auto a = lpc(frame).a;
    for (std::size_t k = 0; k <= 12; ++k) EXPECT_NEAR(a[k], oracle[k], 1e-7 * std::max(1.0, std::abs(oracle[k])));
  }
}

TEST(LpcTest, CepstrumMatchesFftCepstrum) {
  // A stable prediction polynomial from a synthetic frame.
  const auto x = white(400, 4);
  std::vector<double> frame(x.size());
  frame[0] = x[0];
  for (std::size_t n = 1; n < x.size(); ++n) frame[n] = 1.3 * frame[n - 1] - 0.6 * (n > 1 ? frame[n - 2] : 0.0) + x[n];
  const auto a = lpc(frame).a;
  const std::size_t n_fft = 8192;
  const auto logmag = log_envelope(a, n_fft);
  // Real cepstrum by inverse transform; minimum-phase cepstrum doubles it.
  std::vector<std::complex<double>> spec(logmag.begin(), logmag.end());
  const auto real_ceps = dsp::irfft(spec, n_fft);
  const auto c = lpc_cepstrum(a, 20);
  for (std::size_t k = 1; k <= 20; ++k) EXPECT_NEAR(c[k - 1], 2.0 * real_ceps[k], 1e-9);
}

TEST(LpcTest, ToeplitzQuadraticFormMatchesDenseProduct) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(13), r(13);
    for (double& v : a) v = u(rng);
    for (double& v : r) v = u(rng);
    double dense = 0.0;
    for (std::size_t i = 0; i < 13; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < 13; ++j) row += r[static_cast<std::size_t>(std::abs(static_cast<long>(i) - static_cast<long>(j)))] * a[j];
      dense += a[i] * row;
    }
    EXPECT_NEAR(toeplitz_quadratic_form(a, r), dense, 1e-10 * std::max(1.0, std::abs(dense)));
  }
}

class QualityTest : public ::testing::Test {
 protected:
  AudioBuffer speech_ = sim::synth_speech(2.0, 21);
};

TEST_F(QualityTest, IdentityGivesBestValues) {
  const MetricReport r = evaluate(speech_, speech_);
  EXPECT_EQ(r.cd, 0.0);
  EXPECT_EQ(r.llr, 0.0);
  EXPECT_EQ(r.fwsegsnr, 35.0);
  EXPECT_GT(r.cd_frames, 0u);
  EXPECT_EQ(r.cd_frames, r.fwsegsnr_frames);
  EXPECT_LE(r.llr_frames, r.cd_frames);
}

TEST_F(QualityTest, CdAndLlrAreGainInvariant) {
  const AudioBuffer noisy = sim::add_noise(speech_, 15.0, 3);
  const MetricReport base = evaluate(speech_, noisy);
  for (double c : {0.1, 0.5, 2.0, 10.0}) {
    const AudioBuffer t = scaled(noisy, c);
    EXPECT_NEAR(cepstral_distance(speech_, t).value, base.cd, 1e-6);
    EXPECT_NEAR(log_likelihood_ratio(speech_, t).value, base.llr, 1e-6);
  }
  EXPECT_NEAR(cepstral_distance(speech_, scaled(speech_, 0.5)).value, 0.0, 1e-6);
  EXPECT_NEAR(log_likelihood_ratio(speech_, scaled(speech_, 0.5)).value, 0.0, 1e-6);
}

TEST_F(QualityTest, DegradationOrdering) {
  double prev_cd = -1.0, prev_llr = -1.0, prev_fw = 1e9;
  for (double snr : {30.0, 20.0, 10.0, 0.0}) {
    const MetricReport r = evaluate(speech_, sim::add_noise(speech_, snr, 8));
    EXPECT_GE(r.cd, prev_cd) << snr;
    EXPECT_GE(r.llr, prev_llr) << snr;
    EXPECT_LE(r.fwsegsnr, prev_fw) << snr;
    EXPECT_GE(r.cd, 0.0);
    EXPECT_GE(r.llr, 0.0);
    EXPECT_GE(r.fwsegsnr, -10.0);
    EXPECT_LE(r.fwsegsnr, 35.0);
    prev_cd = r.cd;
    prev_llr = r.llr;
    prev_fw = r.fwsegsnr;
    if (snr == 0.0) {
      EXPECT_LT(r.fwsegsnr, 10.0);
    }
  }
}

TEST_F(QualityTest, CepstralDistanceMatchesSpectralDistanceOracle) {
  // Per active frame: RMS difference of the two LPC log envelopes (level
  // removed), in dB, clamped like the metric.
  sim::MixSpec mix;
  mix.t60 = 0.3;
  mix.snr_db = 25.0;
  const sim::Pair pair = sim::make_pair(speech_, mix);
  const AudioBuffer& ref = pair.clean;
  const AudioBuffer& test = pair.reverberant;
  const std::size_t len = 400, hop = 160, n_fft = 4096;
  const auto w = hamming(len);
  const std::size_t frames = 1 + (ref.size() - len) / hop;
  std::vector<double> energy(frames, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t i = 0; i < len; ++i) energy[t] += ref.samples[t * hop + i] * ref.samples[t * hop + i];
  }
  const double gate = *std::max_element(energy.begin(), energy.end()) * 1e-4;
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t t = 0; t < frames; ++t) {
    if (energy[t] <= gate) continue;
    std::vector<double> fr(len), ft(len);
    for (std::size_t i = 0; i < len; ++i) {
      fr[i] = ref.samples[t * hop + i] * w[i];
      ft[i] = test.samples[t * hop + i] * w[i];
    }
    const auto lr = log_envelope(dense_lpc(fr, 12), n_fft);
    const auto lt = log_envelope(dense_lpc(ft, 12), n_fft);
    // Full-circle mean over the one-sided grid (end bins counted once).
    double mean = 0.0, sq = 0.0, wsum = 0.0;
    for (std::size_t k = 0; k < lr.size(); ++k) {
      const double wk = (k == 0 || k + 1 == lr.size()) ? 1.0 : 2.0;
      mean += wk * (lr[k] - lt[k]);
      wsum += wk;
    }
    mean /= wsum;
    for (std::size_t k = 0; k < lr.size(); ++k) {
      const double wk = (k == 0 || k + 1 == lr.size()) ? 1.0 : 2.0;
      const double d = lr[k] - lt[k] - mean;
      sq += wk * d * d;
    }
    const double db = 20.0 / std::log(10.0) * std::sqrt(sq / wsum);
    total += std::min(db, 10.0);
    ++used;
  }
  const double oracle = total / used;
  const MetricValue cd = cepstral_distance(ref, test);
  EXPECT_EQ(cd.frames, used);
  EXPECT_NEAR(cd.value, oracle, 0.1 * oracle);
}

TEST(QualityErrorsTest, SilentShortAndMismatched) {
  AudioBuffer silent;
  silent.samples.assign(8000, 0.0);
  const AudioBuffer speech = sim::synth_speech(0.5, 1);
  EXPECT_THROW(cepstral_distance(silent, speech), DataError);
  EXPECT_THROW(fwsegsnr(silent, speech), DataError);
  AudioBuffer tiny;
  tiny.samples.assign(100, 0.1);
  EXPECT_THROW(log_likelihood_ratio(tiny, tiny), DataError);
  AudioBuffer other = speech;
  other.sample_rate = 8000;
  EXPECT_THROW(evaluate(speech, other), DataError);
}

TEST(QualityErrorsTest, SilentTestFrameScoresWorst) {
  const AudioBuffer speech = sim::synth_speech(1.0, 2);
  AudioBuffer zero = speech;
  std::fill(zero.samples.begin(), zero.samples.end(), 0.0);
  EXPECT_EQ(cepstral_distance(speech, zero).value, 10.0);
  EXPECT_EQ(log_likelihood_ratio(speech, zero).value, 2.0);
  EXPECT_EQ(fwsegsnr(speech, zero).value, 0.0);
}

TEST(MelFilterbankTest, TwentyThreeTriangularBands) {
  const auto bank = mel_filterbank(23, 512, 16000);
  ASSERT_EQ(bank.size(), 23u);
  for (const auto& band : bank) {
    ASSERT_EQ(band.size(), 257u);
    EXPECT_GT(*std::max_element(band.begin(), band.end()), 0.5);
    for (double v : band) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  // Band centres increase.
  auto centre = [](const std::vector<double>& b) {
    return std::max_element(b.begin(), b.end()) - b.begin();
  };
  for (std::size_t b = 1; b < bank.size(); ++b) EXPECT_GE(centre(bank[b]), centre(bank[b - 1]));
}

}  // namespace
}  // namespace skipconv::metrics
