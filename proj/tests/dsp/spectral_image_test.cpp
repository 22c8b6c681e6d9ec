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

#include <cmath>
#include <random>

#include "skipconv/dsp/spectral_image.hpp"
#include "skipconv/error.hpp"

namespace skipconv::dsp {
namespace {

LogPowerSpectrogram random_lps(std::size_t frames, std::size_t bins,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> db(-80.0, 20.0);
  LogPowerSpectrogram lps;
  lps.values_db = SpectralGrid(frames, bins);
  for (double& v : lps.values_db.values) v = db(rng);
  return lps;
}

AudioBuffer tone_mix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.01);
  AudioBuffer a;
  a.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / a.sample_rate;
    a.samples[i] = 0.3 * std::sin(2 * M_PI * 440 * t) +
                   0.2 * std::sin(2 * M_PI * 1250 * t) + noise(rng);
  }
  return a;
}

double interior_snr_db(const AudioBuffer& ref, const AudioBuffer& test,
                       std::size_t margin) {
  double sig = 0.0, err = 0.0;
  for (std::size_t i = margin; i + margin < ref.size(); ++i) {
    sig += ref.samples[i] * ref.samples[i];
    const double d = ref.samples[i] - test.samples[i];
    err += d * d;
  }
  return 10.0 * std::log10(sig / err);
}

TEST(TileTest, ExactMultipleHasNoPadding) {
  const auto images = tile(random_lps(512, 257, 1));
  ASSERT_EQ(images.size(), 2u);
  EXPECT_EQ(images[0].source_offset, 0u);
  EXPECT_EQ(images[1].source_offset, 256u);
  EXPECT_EQ(images[0].pad_frames(), 0u);
  EXPECT_EQ(images[1].pad_frames(), 0u);
}

TEST(TileTest, ShortInputPaddedWithFloor) {
  const auto lps = random_lps(300, 257, 2);
  const auto images = tile(lps);
  ASSERT_EQ(images.size(), 2u);
  EXPECT_EQ(images[1].valid_frames, 44u);
  EXPECT_EQ(images[1].pad_frames(), 212u);
  for (std::size_t f = 0; f < kImageSize; ++f) {
    for (std::size_t t = 44; t < kImageSize; ++t) {
      EXPECT_EQ(images[1].at(f, t), -80.0);
    }
    EXPECT_EQ(images[1].at(f, 10), lps.values_db.at(266, f));
  }
}

TEST(TileTest, UntileInvertsTileForRandomLengths) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 1200);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t frames = len(rng);
    const auto lps = random_lps(frames, 256, rng());
    const auto images = tile(lps);
    EXPECT_EQ(images.size(), (frames + kImageSize - 1) / kImageSize);
    const auto back = untile(images, frames, 256);
    ASSERT_TRUE(back.values_db.same_extent(lps.values_db));
    EXPECT_EQ(back.values_db.values, lps.values_db.values);
  }
}

TEST(TileTest, RejectsTooFewBins) {
  EXPECT_THROW(tile(random_lps(10, 200, 4)), ShapeError);
}

TEST(TileTest, UntileDetectsOverlapAndGaps) {
  auto images = tile(random_lps(600, 257, 5));
  auto overlap = images;
  overlap[1].source_offset = 100;
  EXPECT_THROW(untile(overlap, 600, 256), ShapeError);
  auto missing = images;
  missing.pop_back();
  EXPECT_THROW(untile(missing, 600, 256), ShapeError);
}

TEST(NormMetaTest, MapsDbRangeOntoUnitInterval) {
  const NormMeta m;
  EXPECT_EQ(m.to_network(-80.0), -1.0);
  EXPECT_EQ(m.to_network(20.0), 1.0);
  EXPECT_EQ(m.to_network(-30.0), 0.0);
  EXPECT_DOUBLE_EQ(m.to_db(m.to_network(-17.25)), -17.25);
}

TEST(ReconstructTest, NoisyLpsReproducesNoisySignal) {
  const AudioBuffer a = tone_mix(16000, 6);
  const auto spec = stft(a);
  const auto lps = to_log_power(power_spectrum(spec));
  const AudioBuffer out = reconstruct(lps, spec);
  ASSERT_EQ(out.size(), a.size());
  EXPECT_GT(interior_snr_db(a, out, 512), 40.0);
}

TEST(ReconstructTest, AcceptsLpsWithoutTopBin) {
  const AudioBuffer a = tone_mix(8000, 7);
  const auto spec = stft(a);
  const auto full = to_log_power(power_spectrum(spec));
  LogPowerSpectrogram trimmed;
  trimmed.values_db = SpectralGrid(full.values_db.frames, 256);
  for (std::size_t t = 0; t < full.values_db.frames; ++t) {
    for (std::size_t f = 0; f < 256; ++f) {
      trimmed.values_db.at(t, f) = full.values_db.at(t, f);
    }
  }
  const AudioBuffer out = reconstruct(trimmed, spec);
  EXPECT_GT(interior_snr_db(a, out, 512), 40.0);
  trimmed.values_db = SpectralGrid(full.values_db.frames, 100);
  EXPECT_THROW(reconstruct(trimmed, spec), ShapeError);
}

TEST(ReconstructTest, FloorLpsIsNearlySilent) {
  const AudioBuffer a = tone_mix(8000, 8);
  const auto spec = stft(a);
  LogPowerSpectrogram lps;
  lps.values_db = SpectralGrid(spec.frames, spec.bins, -80.0);
  const AudioBuffer out = reconstruct(lps, spec);
  double sq = 0.0;
  for (double s : out.samples) sq += s * s;
  EXPECT_LT(std::sqrt(sq / out.size()), 1e-4);
}

TEST(ReconstructTest, CleanMagnitudeWithCleanPhaseMatchesClean) {
  AudioBuffer clean;
  clean.samples.resize(16000);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    clean.samples[i] = 0.5 * std::sin(2 * M_PI * 300 * i / 16000.0);
  }
  const auto spec = stft(clean);
  const auto lps = to_log_power(power_spectrum(spec));
  const AudioBuffer out = reconstruct(lps, spec);
  EXPECT_GT(correlation(clean.samples, out.samples), 0.999);
}

}  // namespace
}  // namespace skipconv::dsp
