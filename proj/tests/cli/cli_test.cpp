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
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipconv/cli/commands.hpp"
#include "skipconv/cli/manifest.hpp"
#include "skipconv/dsp/psd.hpp"
#include "skipconv/dsp/wav.hpp"
#include "skipconv/error.hpp"
#include "skipconv/net/checkpoint.hpp"

namespace skipconv::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"skipconv"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  RunResult r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<char> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::uint8_t> bytes_of(const fs::path& p) {
  const auto c = slurp(p);
  return {c.begin(), c.end()};
}

// One small dataset shared by the suite: 6 utterances of 3 s over three
// reverberation times, preprocessed with and without smoothing and used to
// train a tiny network.
class CliTest : public ::testing::Test {
 protected:
  static fs::path root() { return fs::temp_directory_path() / "skipconv_cli_test"; }
  static fs::path data() { return root() / "data"; }
  static fs::path manifest() { return data() / "manifest.jsonl"; }
  static fs::path images() { return root() / "img.arc"; }
  static fs::path images_raw() { return root() / "img_raw.arc"; }
  static fs::path model() { return root() / "model.ckpt"; }

  static void SetUpTestSuite() {
    fs::remove_all(root());
    fs::create_directories(root());
    auto r = invoke({"simulate", "--out", data().string(), "--count", "6",
                     "--seconds", "3", "--t60", "0.1,0.3,0.6", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"preprocess", "--manifest", manifest().string(), "--out",
                images().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"preprocess", "--manifest", manifest().string(), "--out",
                images_raw().string(), "--no-smoothing"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"train", "--archive", images().string(), "--out", model().string(),
                "--preset", "reduced", "--epochs", "2", "--batch", "4", "--lr", "2e-3"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(root()); }
};

TEST_F(CliTest, SimulateWritesPairsPerCondition) {
  const Manifest m = read_manifest(manifest());
  ASSERT_EQ(m.rows.size(), 6u);
  std::set<std::string> dirs;
  for (const auto& row : m.rows) {
    dirs.insert(row.reverberant.parent_path().string());
    EXPECT_EQ(row.clean.parent_path(), row.reverberant.parent_path());
    EXPECT_EQ(crc32_of(bytes_of(m.resolve(row.clean))), row.clean_crc32);
    EXPECT_EQ(crc32_of(bytes_of(m.resolve(row.reverberant))), row.reverberant_crc32);
    // The reverberant file carries the decay tail; the clean one is padded
    // to match.
    const dsp::AudioBuffer a = dsp::read_wav(m.resolve(row.reverberant));
    const dsp::AudioBuffer c = dsp::read_wav(m.resolve(row.clean));
    EXPECT_GE(a.samples.size(), 48000u);
    EXPECT_EQ(c.samples.size(), a.samples.size());
  }
  EXPECT_EQ(dirs, (std::set<std::string>{"t60_0.10", "t60_0.30", "t60_0.60"}));
  EXPECT_DOUBLE_EQ(m.rows[0].t60, 0.1);
  EXPECT_DOUBLE_EQ(m.rows[4].t60, 0.3);
  EXPECT_TRUE(fs::exists(data() / "simulate.toml"));
}

TEST_F(CliTest, SimulateIsDeterministicInSeed) {
  const fs::path again = root() / "again";
  const fs::path other = root() / "other";
  ASSERT_EQ(invoke({"simulate", "--out", again.string(), "--count", "2",
                    "--seconds", "3", "--t60", "0.1,0.3,0.6", "--seed", "5"}).code, 0);
  ASSERT_EQ(invoke({"simulate", "--out", other.string(), "--count", "2",
                    "--seconds", "3", "--t60", "0.1,0.3,0.6", "--seed", "6"}).code, 0);
  const Manifest a = read_manifest(manifest());
  const Manifest b = read_manifest(again / "manifest.jsonl");
  const Manifest c = read_manifest(other / "manifest.jsonl");
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.rows[i].clean_crc32, b.rows[i].clean_crc32);
    EXPECT_EQ(a.rows[i].reverberant_crc32, b.rows[i].reverberant_crc32);
    EXPECT_NE(a.rows[i].reverberant_crc32, c.rows[i].reverberant_crc32);
  }
}

TEST_F(CliTest, EchoedConfigReproducesRun) {
  const fs::path echo = root() / "echo.toml";
  std::string text(slurp(data() / "simulate.toml").data(),
                   slurp(data() / "simulate.toml").size());
  const fs::path replay = root() / "replay";
  const auto pos = text.find(data().string());
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, data().string().size(), replay.string());
  std::ofstream(echo) << text;
  const RunResult r = invoke({"--config", echo.string(), "simulate"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Manifest a = read_manifest(manifest());
  const Manifest b = read_manifest(replay / "manifest.jsonl");
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    EXPECT_EQ(a.rows[i].reverberant_crc32, b.rows[i].reverberant_crc32);
}

TEST_F(CliTest, PreprocessTilesEveryUtterance) {
  const ImageSet set = read_image_set(images());
  const Manifest m = read_manifest(manifest());
  std::size_t expected = 0;
  for (const auto& row : m.rows) {
    const dsp::AudioBuffer a = dsp::read_wav(m.resolve(row.reverberant));
    const std::size_t frames = analyze(a, set.features).spectrum.frames;
    expected += (frames + dsp::kImageSize - 1) / dsp::kImageSize;
  }
  ASSERT_EQ(set.inputs.size(), expected);
  ASSERT_EQ(set.targets.size(), expected);
  ASSERT_EQ(set.entries.size(), expected);
  EXPECT_EQ(set.entries[0].id, "utt00000");
  EXPECT_EQ(set.entries[0].offset, 0u);
  EXPECT_EQ(set.entries[1].offset, dsp::kImageSize);
  for (const auto* group : {&set.inputs, &set.targets})
    for (const auto& img : *group)
      for (double v : img.pixels) EXPECT_GE(v, dsp::kLogPowerFloorDb);
}

TEST_F(CliTest, SmoothingAppliesToInputsAndTargets) {
  const ImageSet on = read_image_set(images());
  const ImageSet off = read_image_set(images_raw());
  EXPECT_TRUE(on.features.smoothing);
  EXPECT_FALSE(off.features.smoothing);
  ASSERT_EQ(on.inputs.size(), off.inputs.size());
  double input_diff = 0.0, target_diff = 0.0;
  for (std::size_t i = 0; i < on.inputs.size(); ++i) {
    for (std::size_t k = 0; k < on.inputs[i].pixels.size(); ++k) {
      input_diff = std::max(input_diff, std::abs(on.inputs[i].pixels[k] - off.inputs[i].pixels[k]));
      target_diff =
          std::max(target_diff, std::abs(on.targets[i].pixels[k] - off.targets[i].pixels[k]));
    }
  }
  EXPECT_GT(input_diff, 1.0);
  EXPECT_GT(target_diff, 1.0);

  // Targets are the clean signal through the same front end as the inputs.
  const Manifest m = read_manifest(manifest());
  for (const ImageSet* set : {&on, &off}) {
    const auto clean = analyze(dsp::read_wav(m.resolve(m.rows[0].clean)), set->features).lps;
    const auto tiles = dsp::tile(clean);
    ASSERT_GE(tiles.size(), 2u);
    EXPECT_EQ(set->targets[0].pixels, tiles[0].pixels);
    EXPECT_EQ(set->targets[1].pixels, tiles[1].pixels);
  }
}

TEST_F(CliTest, ImageArchiveRoundTrips) {
  const ImageSet set = read_image_set(images());
  const ImageSet back = image_set_from_archive(to_archive(set));
  EXPECT_EQ(back.features, set.features);
  ASSERT_EQ(back.inputs.size(), set.inputs.size());
  for (std::size_t i = 0; i < set.inputs.size(); ++i) {
    EXPECT_EQ(back.inputs[i].pixels, set.inputs[i].pixels);
    EXPECT_EQ(back.targets[i].valid_frames, set.targets[i].valid_frames);
    EXPECT_EQ(back.entries[i].id, set.entries[i].id);
  }
}

TEST_F(CliTest, PreprocessRejectsTamperedAudio) {
  const fs::path dir = root() / "tampered";
  fs::remove_all(dir);
  fs::copy(data(), dir, fs::copy_options::recursive);
  const Manifest m = read_manifest(dir / "manifest.jsonl");
  const fs::path victim = m.resolve(m.rows[2].reverberant);
  auto bytes = slurp(victim);
  bytes[bytes.size() / 2] ^= 0x5a;
  std::ofstream(victim, std::ios::binary).write(bytes.data(), bytes.size());
  const RunResult r = invoke({"preprocess", "--manifest", (dir / "manifest.jsonl").string(),
                              "--out", (root() / "bad.arc").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("checksum"), std::string::npos) << r.err;
}

TEST_F(CliTest, ResumeContinuesTheLossTrace) {
  const fs::path one = root() / "one.ckpt";
  const fs::path resumed = root() / "resumed.ckpt";
  ASSERT_EQ(invoke({"train", "--archive", images().string(), "--out", one.string(),
                    "--preset", "reduced", "--epochs", "1", "--batch", "4", "--lr", "2e-3"})
                .code,
            0);
  const RunResult r =
      invoke({"train", "--archive", images().string(), "--out", resumed.string(),
              "--resume", one.string(), "--preset", "reduced", "--epochs", "2",
              "--batch", "4", "--lr", "2e-3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const net::TrainingState full = net::load_checkpoint(model());
  const net::TrainingState cont = net::load_checkpoint(resumed);
  EXPECT_EQ(cont.epoch, 2u);
  EXPECT_EQ(cont.step_loss, full.step_loss);
  EXPECT_EQ(cont.epoch_loss, full.epoch_loss);
  EXPECT_TRUE(fs::exists(fs::path(model()) += ".loss.json"));
}

TEST_F(CliTest, ResumeRejectsMismatchedSetup) {
  EXPECT_EQ(invoke({"train", "--archive", images().string(), "--out",
                    (root() / "x.ckpt").string(), "--resume", model().string(),
                    "--preset", "desk"}).code,
            1);
  EXPECT_EQ(invoke({"train", "--archive", images_raw().string(), "--out",
                    (root() / "x.ckpt").string(), "--resume", model().string(),
                    "--preset", "reduced"}).code,
            1);
}

TEST_F(CliTest, BaselineDropsSkipBlocks) {
  const fs::path base = root() / "baseline.ckpt";
  ASSERT_EQ(invoke({"train", "--archive", images().string(), "--out", base.string(),
                    "--preset", "reduced", "--baseline", "--epochs", "1", "--batch", "4"})
                .code,
            0);
  const net::TrainingState b = net::load_checkpoint(base);
  const net::TrainingState s = net::load_checkpoint(model());
  for (std::size_t c : b.net.config().skip_counts) EXPECT_EQ(c, 0u);
  EXPECT_LT(b.net.parameter_count(), s.net.parameter_count());
}

TEST_F(CliTest, DivergenceExitsWithNumericalCode) {
  const RunResult r = invoke({"train", "--archive", images().string(), "--out",
                              (root() / "nan.ckpt").string(), "--preset", "reduced",
                              "--epochs", "2", "--lr", "1e300"});
  EXPECT_EQ(r.code, 3);
  // 12 images at batch 8: the first update lands before step 2.
  EXPECT_NE(r.err.find("epoch 1, step 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, EnhanceSingleFileKeepsDuration) {
  const Manifest m = read_manifest(manifest());
  const fs::path input = m.resolve(m.rows[1].reverberant);
  const fs::path output = root() / "single" / "out.wav";
  const fs::path dumps = root() / "single" / "dumps";
  const RunResult r = invoke({"enhance", "--checkpoint", model().string(), "--input",
                              input.string(), "--output", output.string(),
                              "--dump-spectrograms", dumps.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const dsp::AudioBuffer in = dsp::read_wav(input);
  const dsp::AudioBuffer out = dsp::read_wav(output);
  EXPECT_EQ(out.samples.size(), in.samples.size());
  EXPECT_EQ(out.sample_rate, in.sample_rate);
  for (double v : out.samples) ASSERT_TRUE(std::isfinite(v));
  const std::string stem = input.stem().string();
  for (const char* kind : {"_reverberant.pgm", "_enhanced.pgm"}) {
    const auto pgm = slurp(dumps / (stem + kind));
    ASSERT_GT(pgm.size(), 2u);
    EXPECT_EQ(std::string(pgm.begin(), pgm.begin() + 2), "P5");
  }
}

TEST_F(CliTest, EnhanceManifestWritesEnhancedRows) {
  const fs::path out = root() / "enhanced";
  const RunResult r = invoke({"enhance", "--checkpoint", model().string(), "--manifest",
                              manifest().string(), "--out-dir", out.string(),
                              "--dump-spectrograms", (out / "dumps").string(),
                              "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Manifest m = read_manifest(out / "manifest.jsonl");
  ASSERT_EQ(m.rows.size(), 6u);
  for (const auto& row : m.rows) {
    ASSERT_TRUE(row.enhanced.has_value());
    EXPECT_TRUE(row.enhanced->is_relative());
    EXPECT_EQ(dsp::read_wav(m.resolve(*row.enhanced)).samples.size(),
              dsp::read_wav(m.resolve(row.reverberant)).samples.size());
    EXPECT_TRUE(fs::exists(out / "dumps" / (row.id + "_clean.pgm")));
  }
  const RunResult e = invoke({"evaluate", "--manifest", (out / "manifest.jsonl").string()});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("CD enh"), std::string::npos);
}

TEST_F(CliTest, EvaluateGroupsByReverberationTime) {
  const fs::path report = root() / "report.json";
  const RunResult r =
      invoke({"evaluate", "--manifest", manifest().string(), "--out", report.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(report);
  const nlohmann::json j = nlohmann::json::parse(in);
  ASSERT_EQ(j["conditions"].size(), 3u);
  EXPECT_DOUBLE_EQ(j["conditions"][0]["t60"].get<double>(), 0.1);
  EXPECT_DOUBLE_EQ(j["conditions"][2]["t60"].get<double>(), 0.6);
  EXPECT_EQ(j["conditions"][0]["count"].get<std::size_t>(), 2u);
  EXPECT_EQ(j["overall"]["count"].get<std::size_t>(), 6u);
  EXPECT_EQ(j["utterances"].size(), 6u);
  EXPECT_FALSE(j["overall"].contains("enhanced"));
  // Longer tails distort more.
  EXPECT_LT(j["conditions"][0]["reverberant"]["cd"].get<double>(),
            j["conditions"][2]["reverberant"]["cd"].get<double>());
}

TEST_F(CliTest, EvaluateScoresIdentityAsBest) {
  Manifest m = read_manifest(manifest());
  std::vector<ManifestRow> rows;
  for (auto row : m.rows) {
    row.clean = m.resolve(row.clean);
    row.reverberant = m.resolve(row.reverberant);
    row.enhanced = row.clean;
    rows.push_back(row);
  }
  const fs::path path = root() / "identity.jsonl";
  write_manifest(path, rows);
  EvaluateConfig cfg;
  cfg.manifest = path;
  const EvaluationReport rep = cmd_evaluate(cfg);
  ASSERT_TRUE(rep.overall.enhanced.has_value());
  EXPECT_NEAR(rep.overall.enhanced->cd, 0.0, 1e-9);
  EXPECT_NEAR(rep.overall.enhanced->llr, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(rep.overall.enhanced->fwsegsnr, cfg.metrics.snr_max);
  EXPECT_GT(rep.overall.reverberant.cd, 0.0);
  const auto j = to_json(rep);
  EXPECT_LT(j["overall"]["delta"]["cd"].get<double>(), 0.0);
  EXPECT_GT(j["overall"]["delta"]["fwsegsnr"].get<double>(), 0.0);
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--out", "/tmp/x", "--t60", "-1"}).code, 1);
  EXPECT_EQ(invoke({"train", "--archive", "/nonexistent.arc", "--out", "/tmp/x.ckpt"}).code, 2);
  EXPECT_EQ(invoke({"evaluate", "--manifest", "/nonexistent.jsonl"}).code, 2);
  const RunResult r = invoke({"enhance", "--checkpoint", "m.ckpt"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliErrors, MalformedManifestNamesLine) {
  const fs::path p = fs::temp_directory_path() / "skipconv_bad_manifest.jsonl";
  std::ofstream(p) << "{\"id\":\"a\",\"t60\":0.3,\"snr_db\":20,\"seed\":1,"
                      "\"clean\":\"c.wav\",\"reverberant\":\"r.wav\"}\nnot json\n";
  try {
    read_manifest(p);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  fs::remove(p);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(97);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  for (std::size_t jobs : {1u, 3u, 8u}) {
    try {
      parallel_for(40, jobs, [](std::size_t i) {
        if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "7");
    }
  }
}

}  // namespace
}  // namespace skipconv::cli
