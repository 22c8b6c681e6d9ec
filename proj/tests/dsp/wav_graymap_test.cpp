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
#include <filesystem>
#include <random>
#include <string>

#include "skipconv/dsp/graymap.hpp"
#include "skipconv/dsp/wav.hpp"
#include "skipconv/error.hpp"

namespace skipconv::dsp {
namespace {

AudioBuffer random_audio(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  AudioBuffer a;
  a.samples.resize(n);
  for (double& s : a.samples) s = u(rng);
  return a;
}

TEST(WavTest, Float32RoundTrip) {
  const AudioBuffer a = random_audio(1000, 1);
  const AudioBuffer b = decode_wav(encode_wav(a, WavFormat::kFloat32));
  ASSERT_EQ(b.size(), a.size());
  EXPECT_EQ(b.sample_rate, 16000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(b.samples[i], static_cast<double>(static_cast<float>(a.samples[i])));
  }
}

TEST(WavTest, Pcm16RoundTripWithinQuantization) {
  AudioBuffer a = random_audio(1000, 2);
  a.sample_rate = 8000;
  const auto bytes = encode_wav(a, WavFormat::kPcm16);
  EXPECT_EQ(bytes.size(), 44u + 2000u);
  const AudioBuffer b = decode_wav(bytes);
  EXPECT_EQ(b.sample_rate, 8000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(b.samples[i], a.samples[i], 0.5 / 32767 + 1e-12);
  }
}

TEST(WavTest, Pcm16Saturates) {
  AudioBuffer a;
  a.samples = {2.0, -2.0};
  const AudioBuffer b = decode_wav(encode_wav(a, WavFormat::kPcm16));
  EXPECT_NEAR(b.samples[0], 1.0, 1e-4);
  EXPECT_NEAR(b.samples[1], -1.0, 1e-4);
}

TEST(WavTest, RejectsGarbageAndStereo) {
  EXPECT_THROW(decode_wav({1, 2, 3, 4}), DataError);
  auto bytes = encode_wav(random_audio(10, 3), WavFormat::kPcm16);
  bytes[22] = 2;  // channel count
  EXPECT_THROW(decode_wav(bytes), DataError);
  auto truncated = encode_wav(random_audio(10, 3), WavFormat::kPcm16);
  truncated.resize(30);
  EXPECT_THROW(decode_wav(truncated), DataError);
}

TEST(WavTest, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "skipconv_wav_test";
  std::filesystem::create_directories(dir);
  const AudioBuffer a = random_audio(321, 4);
  write_wav(dir / "a.wav", a);
  const AudioBuffer b = read_wav(dir / "a.wav");
  EXPECT_EQ(b.size(), a.size());
  EXPECT_FALSE(std::filesystem::exists(dir / "a.wav.tmp"));
  EXPECT_THROW(read_wav(dir / "missing.wav"), DataError);
  std::filesystem::remove_all(dir);
}

TEST(GraymapTest, HeaderMappingAndOrientation) {
  SpectralGrid g(3, 2);
  // frame 0: low bin -80, high bin 20; frame 1: -30 both; frame 2 clipped.
  g.at(0, 0) = -80.0;
  g.at(0, 1) = 20.0;
  g.at(1, 0) = -30.0;
  g.at(1, 1) = -30.0;
  g.at(2, 0) = -200.0;
  g.at(2, 1) = 50.0;
  const auto bytes = encode_graymap(g);
  const std::string header = "P5\n3 2\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 6);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + header.size()), header);
  const std::uint8_t* px = bytes.data() + header.size();
  // Top row is the highest bin.
  EXPECT_EQ(px[0], 255);
  EXPECT_EQ(px[1], 128);
  EXPECT_EQ(px[2], 255);
  EXPECT_EQ(px[3], 0);
  EXPECT_EQ(px[4], 128);
  EXPECT_EQ(px[5], 0);
}

}  // namespace
}  // namespace skipconv::dsp
