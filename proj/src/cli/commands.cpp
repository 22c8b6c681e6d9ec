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
#include "skipconv/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "skipconv/dsp/graymap.hpp"
#include "skipconv/dsp/psd.hpp"
#include "skipconv/dsp/wav.hpp"
#include "skipconv/error.hpp"
#include "skipconv/net/trainer.hpp"
#include "skipconv/sim/reverb.hpp"
#include "skipconv/sim/speech_synth.hpp"

namespace skipconv::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kImageFormat = "skipconv-images";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string utterance_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "utt%05zu", i);
  return buf;
}

std::string t60_dir(double t60) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t60_%.2f", t60);
  return buf;
}

void make_dirs(const fs::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_wav_atomic(const fs::path& path, const dsp::AudioBuffer& audio) {
  nn::write_file_atomic(path, dsp::encode_wav(audio, dsp::WavFormat::kFloat32));
}

void write_graymap_atomic(const fs::path& path, const dsp::SpectralGrid& db) {
  nn::write_file_atomic(path, dsp::encode_graymap(db));
}

// Reads a WAV and checks it against a recorded checksum (0: unchecked).
dsp::AudioBuffer read_checked(const fs::path& path, std::uint32_t expected_crc) {
  const std::vector<std::uint8_t> bytes = nn::read_file_bytes(path);
  if (expected_crc != 0 && crc32_of(bytes) != expected_crc) {
    throw DataError(path.string() + ": checksum does not match the manifest");
  }
  try {
    return dsp::decode_wav(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

nn::Tensor image_tensor(const dsp::SpectralImage& img) {
  return nn::Tensor({dsp::kImageSize, dsp::kImageSize}, img.pixels);
}

metrics::MetricReport mean_report(const std::vector<const metrics::MetricReport*>& reports) {
  metrics::MetricReport m;
  if (reports.empty()) return m;
  for (const metrics::MetricReport* r : reports) {
    m.cd += r->cd;
    m.llr += r->llr;
    m.fwsegsnr += r->fwsegsnr;
    m.cd_frames += r->cd_frames;
    m.llr_frames += r->llr_frames;
    m.fwsegsnr_frames += r->fwsegsnr_frames;
  }
  const double n = static_cast<double>(reports.size());
  m.cd /= n;
  m.llr /= n;
  m.fwsegsnr /= n;
  return m;
}

ConditionSummary summarize(double t60, const std::vector<const UtteranceScore*>& scores) {
  ConditionSummary s;
  s.t60 = t60;
  s.count = scores.size();
  std::vector<const metrics::MetricReport*> rev;
  std::vector<const metrics::MetricReport*> enh;
  for (const UtteranceScore* u : scores) {
    rev.push_back(&u->reverberant);
    if (u->enhanced) enh.push_back(&*u->enhanced);
  }
  s.reverberant = mean_report(rev);
  // Enhanced means only when every utterance in the group has one, so the
  // delta compares like with like.
  if (!enh.empty() && enh.size() == rev.size()) s.enhanced = mean_report(enh);
  return s;
}

nlohmann::ordered_json report_json(const metrics::MetricReport& r) {
  nlohmann::ordered_json j;
  j["cd"] = r.cd;
  j["llr"] = r.llr;
  j["fwsegsnr"] = r.fwsegsnr;
  j["cd_frames"] = r.cd_frames;
  j["llr_frames"] = r.llr_frames;
  j["fwsegsnr_frames"] = r.fwsegsnr_frames;
  return j;
}

nlohmann::ordered_json summary_json(const ConditionSummary& s) {
  nlohmann::ordered_json j;
  if (!std::isnan(s.t60)) j["t60"] = s.t60;
  j["count"] = s.count;
  j["reverberant"] = report_json(s.reverberant);
  if (s.enhanced) {
    j["enhanced"] = report_json(*s.enhanced);
    j["delta"] = {{"cd", s.enhanced->cd - s.reverberant.cd},
                  {"llr", s.enhanced->llr - s.reverberant.llr},
                  {"fwsegsnr", s.enhanced->fwsegsnr - s.reverberant.fwsegsnr}};
  }
  return j;
}

}  // namespace

dsp::StftConfig stft_config(const FeatureConfig& cfg) {
  dsp::StftConfig s;
  s.frame_len = cfg.frame_len;
  s.hop = cfg.hop;
  s.window = dsp::periodic_hann(cfg.frame_len);
  return s;
}

Features analyze(const dsp::AudioBuffer& audio, const FeatureConfig& cfg) {
  Features f;
  f.spectrum = dsp::stft(audio, stft_config(cfg));
  const dsp::SpectralGrid power = dsp::power_spectrum(f.spectrum);
  if (!cfg.smoothing) {
    f.lps = dsp::to_log_power(power);
    return f;
  }
  dsp::NoiseTrackerConfig tracker;
  tracker.window_frames = cfg.noise_window;
  tracker.bias_comp = cfg.noise_bias;
  tracker.pre_alpha = cfg.noise_pre_alpha;
  dsp::SmoothingConfig smoothing;
  smoothing.alpha_min = cfg.alpha_min;
  smoothing.alpha_max = cfg.alpha_max;
  const dsp::NoisePsdEstimate noise = dsp::estimate_noise_psd(power, tracker);
  f.lps = dsp::to_log_power(dsp::optimal_smooth(power, noise, smoothing).values);
  return f;
}

nn::TensorArchive to_archive(const ImageSet& set) {
  if (set.inputs.size() != set.entries.size() || set.targets.size() != set.entries.size()) {
    throw ShapeError("image set: entry, input and target counts differ");
  }
  nlohmann::json images = nlohmann::json::array();
  for (const ImageSet::Entry& e : set.entries) {
    images.push_back({{"id", e.id}, {"offset", e.offset}, {"valid_frames", e.valid_frames}});
  }
  nn::TensorArchive archive;
  archive.header = nlohmann::json{{"format", kImageFormat},
                                  {"features", to_json(set.features)},
                                  {"images", images}}
                       .dump();
  char name[32];
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    std::snprintf(name, sizeof name, "input.%05zu", i);
    archive.tensors.emplace_back(name, image_tensor(set.inputs[i]));
    std::snprintf(name, sizeof name, "target.%05zu", i);
    archive.tensors.emplace_back(name, image_tensor(set.targets[i]));
  }
  return archive;
}

ImageSet image_set_from_archive(const nn::TensorArchive& archive) {
  ImageSet set;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(archive.header);
    if (header.value("format", std::string()) != kImageFormat) {
      throw DataError("archive does not hold spectral images");
    }
    set.features = feature_config_from_json(header.at("features"));
    for (const nlohmann::json& e : header.at("images")) {
      set.entries.push_back({e.at("id").get<std::string>(), e.at("offset").get<std::size_t>(),
                             e.at("valid_frames").get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("image archive header: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("image archive: ") + e.what());
  }
  if (archive.tensors.size() != 2 * set.entries.size()) {
    throw DataError("image archive: " + std::to_string(archive.tensors.size()) +
                    " tensors for " + std::to_string(set.entries.size()) + " images");
  }
  char name[32];
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    for (const char* kind : {"input", "target"}) {
      std::snprintf(name, sizeof name, "%s.%05zu", kind, i);
      const nn::Tensor& t = archive.get(name);
      if (t.shape() != nn::Shape{dsp::kImageSize, dsp::kImageSize}) {
        throw DataError(std::string("image archive: tensor ") + name + " has shape " +
                        nn::shape_to_string(t.shape()));
      }
      dsp::SpectralImage img;
      img.pixels = t.values();
      img.source_offset = set.entries[i].offset;
      img.valid_frames = set.entries[i].valid_frames;
      (kind[0] == 'i' ? set.inputs : set.targets).push_back(std::move(img));
    }
  }
  return set;
}

ImageSet read_image_set(const fs::path& path) {
  try {
    return image_set_from_archive(nn::read_archive(path));
  } catch (const DataError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw DataError(path.string() + ": " + what);
  }
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Manifest cmd_simulate(const SimulateConfig& cfg) {
  validate(cfg);
  make_dirs(cfg.out_dir);
  for (double t60 : cfg.t60s) make_dirs(cfg.out_dir / t60_dir(t60));

  Manifest manifest;
  manifest.dir = cfg.out_dir;
  manifest.rows.resize(cfg.count);
  parallel_for(cfg.count, cfg.jobs, [&](std::size_t i) {
    ManifestRow& row = manifest.rows[i];
    row.id = utterance_id(i);
    row.t60 = cfg.t60s[i % cfg.t60s.size()];
    row.snr_db = cfg.snr_db;
    row.seed = splitmix64(cfg.seed ^ splitmix64(i));

    const dsp::AudioBuffer speech = sim::synth_speech(cfg.seconds, row.seed, cfg.sample_rate);
    sim::MixSpec mix;
    mix.snr_db = cfg.snr_db;
    mix.seed = row.seed;
    mix.t60 = row.t60;
    mix.direct_to_reverb_db = cfg.direct_to_reverb_db;
    mix.direct_delay = cfg.direct_delay;
    const sim::Pair pair = sim::make_pair(speech, mix);

    const fs::path dir = t60_dir(row.t60);
    row.clean = dir / (row.id + "_clean.wav");
    row.reverberant = dir / (row.id + "_reverb.wav");
    const auto clean_bytes = dsp::encode_wav(pair.clean, dsp::WavFormat::kFloat32);
    const auto reverb_bytes = dsp::encode_wav(pair.reverberant, dsp::WavFormat::kFloat32);
    row.clean_crc32 = crc32_of(clean_bytes);
    row.reverberant_crc32 = crc32_of(reverb_bytes);
    nn::write_file_atomic(cfg.out_dir / row.clean, clean_bytes);
    nn::write_file_atomic(cfg.out_dir / row.reverberant, reverb_bytes);
  });
  write_manifest(cfg.out_dir / "manifest.jsonl", manifest.rows);
  return manifest;
}

ImageSet cmd_preprocess(const PreprocessConfig& cfg) {
  validate(cfg);
  const Manifest manifest = read_manifest(cfg.manifest);
  struct Tiles {
    std::vector<dsp::SpectralImage> inputs;
    std::vector<dsp::SpectralImage> targets;
  };
  std::vector<Tiles> per_row(manifest.rows.size());
  parallel_for(manifest.rows.size(), cfg.jobs, [&](std::size_t i) {
    const ManifestRow& row = manifest.rows[i];
    const dsp::AudioBuffer rev =
        read_checked(manifest.resolve(row.reverberant), row.reverberant_crc32);
    const dsp::AudioBuffer clean = read_checked(manifest.resolve(row.clean), row.clean_crc32);
    if (rev.size() != clean.size() || rev.sample_rate != clean.sample_rate) {
      throw DataError("utterance " + row.id + ": clean and reverberant files differ in length "
                      "or sample rate");
    }
    per_row[i].inputs = dsp::tile(analyze(rev, cfg.features).lps);
    per_row[i].targets = dsp::tile(analyze(clean, cfg.features).lps);
  });

  ImageSet set;
  set.features = cfg.features;
  for (std::size_t i = 0; i < per_row.size(); ++i) {
    for (std::size_t k = 0; k < per_row[i].inputs.size(); ++k) {
      const dsp::SpectralImage& img = per_row[i].inputs[k];
      set.entries.push_back({manifest.rows[i].id, img.source_offset, img.valid_frames});
      set.inputs.push_back(std::move(per_row[i].inputs[k]));
      set.targets.push_back(std::move(per_row[i].targets[k]));
    }
  }
  make_dirs(cfg.out.parent_path());
  nn::write_archive(cfg.out, to_archive(set));
  return set;
}

net::TrainingState cmd_train(const TrainRunConfig& cfg, std::ostream& log) {
  validate(cfg);
  net::NetworkConfig net_cfg = net::network_preset(cfg.preset);
  if (cfg.baseline) net_cfg = net::NetworkConfig::baseline(net_cfg);
  const ImageSet set = read_image_set(cfg.archive);
  if (set.entries.size() < 2) {
    throw DataError("train: archive " + cfg.archive.string() + " holds " +
                    std::to_string(set.entries.size()) + " image(s), need at least 2");
  }

  nn::AdamConfig adam;
  adam.lr = cfg.lr;
  adam.beta1 = cfg.beta1;
  adam.beta2 = cfg.beta2;
  adam.eps = cfg.adam_eps;
  net::TrainingState state = cfg.resume.empty() ? net::TrainingState(net_cfg, cfg.seed, adam)
                                                 : net::load_checkpoint(cfg.resume);
  if (!cfg.resume.empty()) {
    if (!(state.net.config() == net_cfg)) {
      throw ConfigError("train: checkpoint " + cfg.resume.string() +
                        " was trained with a different network configuration");
    }
    const auto stored = state.metadata.find("features");
    if (stored == state.metadata.end() || feature_config_from_json(*stored) != set.features) {
      throw ConfigError("train: archive features differ from those the checkpoint was "
                        "trained on");
    }
  }
  state.metadata["features"] = to_json(set.features);

  std::vector<net::ImagePair> data;
  data.reserve(set.entries.size());
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    data.push_back(net::to_image_pair(set.inputs[i], set.targets[i]));
  }

  make_dirs(cfg.out.parent_path());
  fs::path loss_log = cfg.out;
  loss_log += ".loss.json";
  net::TrainConfig train_cfg;
  train_cfg.epochs = cfg.epochs;
  train_cfg.batch = cfg.batch;
  train_cfg.checkpoint_path = cfg.out;
  train_cfg.on_epoch = [&](const net::EpochReport& r) {
    log << "epoch " << r.epoch << "/" << cfg.epochs << "  steps " << r.steps << "  mse "
        << r.mean_loss << std::endl;
    nlohmann::json j = {{"step_loss", state.step_loss}, {"epoch_loss", state.epoch_loss}};
    nn::write_file_atomic(loss_log, j.dump() + "\n");
  };
  log << "training " << data.size() << " images, " << state.net.parameter_count()
      << " parameters, epochs " << state.epoch + 1 << ".." << cfg.epochs << std::endl;
  net::train(state, data, train_cfg);
  return state;
}

EnhanceOutput enhance_audio(net::SkipConvNet& net, const FeatureConfig& features,
                            const dsp::AudioBuffer& input, std::size_t batch) {
  const Features f = analyze(input, features);
  EnhanceOutput out;
  out.enhanced = net::enhance(net, f.lps, batch);
  out.audio = dsp::reconstruct(out.enhanced, f.spectrum);
  // Samples past the last full frame are not covered by the analysis.
  out.audio.samples.resize(input.size(), 0.0);
  out.reverberant = f.lps;
  return out;
}

void cmd_enhance(const EnhanceConfig& cfg) {
  validate(cfg);
  net::TrainingState state = net::load_checkpoint(cfg.checkpoint);
  const auto stored = state.metadata.find("features");
  if (stored == state.metadata.end()) {
    throw DataError("enhance: checkpoint " + cfg.checkpoint.string() +
                    " does not record its feature settings");
  }
  const FeatureConfig features = feature_config_from_json(*stored);
  make_dirs(cfg.dump_dir);

  if (!cfg.input.empty()) {
    const dsp::AudioBuffer input = dsp::read_wav(cfg.input);
    const EnhanceOutput out = enhance_audio(state.net, features, input, cfg.batch);
    make_dirs(cfg.output.parent_path());
    write_wav_atomic(cfg.output, out.audio);
    if (!cfg.dump_dir.empty()) {
      const std::string stem = cfg.input.stem().string();
      write_graymap_atomic(cfg.dump_dir / (stem + "_reverberant.pgm"), out.reverberant.values_db);
      write_graymap_atomic(cfg.dump_dir / (stem + "_enhanced.pgm"), out.enhanced.values_db);
    }
    return;
  }

  const Manifest manifest = read_manifest(cfg.manifest);
  make_dirs(cfg.out_dir);
  std::vector<ManifestRow> rows = manifest.rows;
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    ManifestRow& row = rows[i];
    // forward() keeps per-call state, so each task works on its own copy.
    net::SkipConvNet net = state.net;
    const fs::path rev_path = manifest.resolve(row.reverberant);
    const fs::path clean_path = manifest.resolve(row.clean);
    const dsp::AudioBuffer input = read_checked(rev_path, row.reverberant_crc32);
    const EnhanceOutput out = enhance_audio(net, features, input, cfg.batch);
    const fs::path enhanced = row.id + "_enhanced.wav";
    write_wav_atomic(cfg.out_dir / enhanced, out.audio);
    if (!cfg.dump_dir.empty()) {
      const dsp::AudioBuffer clean = read_checked(clean_path, row.clean_crc32);
      write_graymap_atomic(cfg.dump_dir / (row.id + "_reverberant.pgm"),
                           out.reverberant.values_db);
      write_graymap_atomic(cfg.dump_dir / (row.id + "_enhanced.pgm"), out.enhanced.values_db);
      write_graymap_atomic(cfg.dump_dir / (row.id + "_clean.pgm"),
                           analyze(clean, features).lps.values_db);
    }
    row.clean = relative_to(clean_path, cfg.out_dir);
    row.reverberant = relative_to(rev_path, cfg.out_dir);
    row.enhanced = enhanced;
  });
  write_manifest(cfg.out_dir / "manifest.jsonl", rows);
}

nlohmann::ordered_json to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json utts = nlohmann::ordered_json::array();
  for (const UtteranceScore& u : report.utterances) {
    nlohmann::ordered_json row;
    row["id"] = u.id;
    row["t60"] = u.t60;
    row["reverberant"] = report_json(u.reverberant);
    if (u.enhanced) row["enhanced"] = report_json(*u.enhanced);
    utts.push_back(row);
  }
  nlohmann::ordered_json conditions = nlohmann::ordered_json::array();
  for (const ConditionSummary& c : report.conditions) conditions.push_back(summary_json(c));
  j["conditions"] = conditions;
  j["overall"] = summary_json(report.overall);
  j["utterances"] = utts;
  return j;
}

std::string format_table(const EvaluationReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %4s  %8s %8s %8s  %8s %8s %8s  %9s %9s %9s\n", "t60",
                "n", "CD rev", "CD enh", "dCD", "LLR rev", "LLR enh", "dLLR", "FWS rev",
                "FWS enh", "dFWS");
  out << line;
  auto emit = [&](const ConditionSummary& c, const char* label) {
    const metrics::MetricReport& r = c.reverberant;
    if (c.enhanced) {
      const metrics::MetricReport& e = *c.enhanced;
      std::snprintf(line, sizeof line,
                    "%-8s %4zu  %8.3f %8.3f %+8.3f  %8.3f %8.3f %+8.3f  %9.3f %9.3f %+9.3f\n",
                    label, c.count, r.cd, e.cd, e.cd - r.cd, r.llr, e.llr, e.llr - r.llr,
                    r.fwsegsnr, e.fwsegsnr, e.fwsegsnr - r.fwsegsnr);
    } else {
      std::snprintf(line, sizeof line,
                    "%-8s %4zu  %8.3f %8s %8s  %8.3f %8s %8s  %9.3f %9s %9s\n", label, c.count,
                    r.cd, "-", "-", r.llr, "-", "-", r.fwsegsnr, "-", "-");
    }
    out << line;
  };
  char label[32];
  for (const ConditionSummary& c : report.conditions) {
    std::snprintf(label, sizeof label, "%.2f", c.t60);
    emit(c, label);
  }
  emit(report.overall, "all");
  return out.str();
}

EvaluationReport cmd_evaluate(const EvaluateConfig& cfg) {
  validate(cfg);
  const Manifest manifest = read_manifest(cfg.manifest);
  EvaluationReport report;
  report.utterances.resize(manifest.rows.size());
  parallel_for(manifest.rows.size(), cfg.jobs, [&](std::size_t i) {
    const ManifestRow& row = manifest.rows[i];
    UtteranceScore& score = report.utterances[i];
    score.id = row.id;
    score.t60 = row.t60;
    const dsp::AudioBuffer clean = read_checked(manifest.resolve(row.clean), row.clean_crc32);
    const dsp::AudioBuffer rev =
        read_checked(manifest.resolve(row.reverberant), row.reverberant_crc32);
    score.reverberant = metrics::evaluate(clean, rev, cfg.metrics);
    if (row.enhanced) {
      const dsp::AudioBuffer enh = dsp::read_wav(manifest.resolve(*row.enhanced));
      score.enhanced = metrics::evaluate(clean, enh, cfg.metrics);
    }
  });

  std::map<double, std::vector<const UtteranceScore*>> groups;
  std::vector<const UtteranceScore*> all;
  for (const UtteranceScore& u : report.utterances) {
    groups[u.t60].push_back(&u);
    all.push_back(&u);
  }
  for (const auto& [t60, scores] : groups) report.conditions.push_back(summarize(t60, scores));
  report.overall = summarize(std::nan(""), all);

  if (!cfg.out.empty()) {
    make_dirs(cfg.out.parent_path());
    nn::write_file_atomic(cfg.out, to_json(report).dump(2) + "\n");
  }
  return report;
}

}  // namespace skipconv::cli
