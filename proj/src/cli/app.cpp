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
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skipconv/cli/commands.hpp"
#include "skipconv/error.hpp"
#include "skipconv/nn/tensor_archive.hpp"

namespace skipconv::cli {

namespace fs = std::filesystem;

namespace {

void add_feature_options(CLI::App* cmd, FeatureConfig& f) {
  cmd->add_option("--frame-len", f.frame_len, "STFT frame length in samples")
      ->capture_default_str();
  cmd->add_option("--hop", f.hop, "STFT hop in samples")->capture_default_str();
  cmd->add_flag("--smoothing,!--no-smoothing", f.smoothing,
                "Optimal PSD smoothing before the log (disable for raw LPS)")
      ->default_str(f.smoothing ? "true" : "false");
  cmd->add_option("--alpha-min", f.alpha_min, "Smoothing parameter lower clamp")
      ->capture_default_str();
  cmd->add_option("--alpha-max", f.alpha_max, "Smoothing parameter upper clamp")
      ->capture_default_str();
  cmd->add_option("--noise-window", f.noise_window, "Noise tracker window in frames")
      ->capture_default_str();
  cmd->add_option("--noise-bias", f.noise_bias, "Noise tracker bias compensation")
      ->capture_default_str();
  cmd->add_option("--noise-pre-alpha", f.noise_pre_alpha,
                  "Noise tracker fixed pre-smoothing factor")
      ->capture_default_str();
}

// Resolved options of the selected subcommand, defaults included, in the
// format --config reads back.
void echo_config(const CLI::App& cmd, const fs::path& path) {
  if (path.empty()) return;
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  nn::write_file_atomic(path, "[" + cmd.get_name() + "]\n" + cmd.config_to_str(true, true));
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out += suffix;
  return out;
}

int report(std::ostream& err, const char* kind, const std::exception& e, int code) {
  err << "skipconv: " << kind << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speech dereverberation with a skip-convolution U-Net", "skipconv"};
  app.set_config("--config", "", "Read options from a TOML file written by a previous run");
  app.require_subcommand(1);

  SimulateConfig sim;
  auto* simulate = app.add_subcommand("simulate", "Synthesize paired clean/reverberant WAVs");
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_option("--count", sim.count, "Number of utterances")->capture_default_str();
  simulate->add_option("--seconds", sim.seconds, "Utterance length")->capture_default_str();
  simulate->add_option("--t60", sim.t60s, "T60 grid in seconds, assigned round robin")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--snr", sim.snr_db, "Additive noise SNR in dB (inf: no noise)")
      ->capture_default_str();
  simulate->add_option("--drr", sim.direct_to_reverb_db,
                       "Direct-to-reverberant ratio in dB at T60 0.5 s")
      ->capture_default_str();
  simulate->add_option("--direct-delay", sim.direct_delay, "Direct path delay in samples")
      ->capture_default_str();
  simulate->add_option("--sample-rate", sim.sample_rate, "Sample rate")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Dataset seed")->capture_default_str();
  simulate->add_option("--jobs", sim.jobs, "Worker threads")->capture_default_str();

  PreprocessConfig pre;
  auto* preprocess =
      app.add_subcommand("preprocess", "Turn a manifest into a spectral-image archive");
  preprocess->add_option("--manifest", pre.manifest, "Dataset manifest (JSON lines)")
      ->required();
  preprocess->add_option("--out", pre.out, "Output image archive")->required();
  add_feature_options(preprocess, pre.features);
  preprocess->add_option("--jobs", pre.jobs, "Worker threads")->capture_default_str();

  TrainRunConfig tr;
  auto* train = app.add_subcommand("train", "Train the network on an image archive");
  train->add_option("--archive", tr.archive, "Image archive from preprocess")->required();
  train->add_option("--out", tr.out, "Checkpoint path, rewritten after every epoch")
      ->required();
  train->add_option("--resume", tr.resume, "Continue from this checkpoint");
  train->add_option("--preset", tr.preset, "Network widths: full, desk or reduced")
      ->capture_default_str();
  train->add_flag("--baseline", tr.baseline, "Plain U-Net without skip blocks")
      ->capture_default_str();
  train->add_option("--epochs", tr.epochs, "Total epochs")->capture_default_str();
  train->add_option("--batch", tr.batch, "Batch size")->capture_default_str();
  train->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
  train->add_option("--beta1", tr.beta1, "Adam beta1")->capture_default_str();
  train->add_option("--beta2", tr.beta2, "Adam beta2")->capture_default_str();
  train->add_option("--adam-eps", tr.adam_eps, "Adam epsilon")->capture_default_str();
  train->add_option("--seed", tr.seed, "Initialization and shuffling seed")
      ->capture_default_str();

  EnhanceConfig enh;
  auto* enhance = app.add_subcommand("enhance", "Dereverberate WAV files");
  enhance->add_option("--checkpoint", enh.checkpoint, "Trained checkpoint")->required();
  enhance->add_option("--input", enh.input, "Input WAV (single-file mode)");
  enhance->add_option("--output", enh.output, "Output WAV (single-file mode)");
  enhance->add_option("--manifest", enh.manifest, "Dataset manifest (batch mode)");
  enhance->add_option("--out-dir", enh.out_dir, "Output directory (batch mode)");
  enhance->add_option("--dump-spectrograms", enh.dump_dir,
                      "Write reverberant/enhanced(/clean) spectrogram PGMs here");
  enhance->add_option("--batch", enh.batch, "Images per forward pass")->capture_default_str();
  enhance->add_option("--jobs", enh.jobs, "Worker threads")->capture_default_str();

  EvaluateConfig ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score degraded/enhanced audio vs clean");
  evaluate->add_option("--manifest", ev.manifest, "Manifest with clean, reverberant and "
                                                  "optional enhanced paths")
      ->required();
  evaluate->add_option("--out", ev.out, "JSON report path");
  evaluate->add_option("--lpc-order", ev.metrics.lpc_order, "LPC order")->capture_default_str();
  evaluate->add_option("--frame-ms", ev.metrics.frame_ms, "Frame length")->capture_default_str();
  evaluate->add_option("--hop-ms", ev.metrics.hop_ms, "Frame hop")->capture_default_str();
  evaluate->add_option("--jobs", ev.jobs, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      validate(sim);
      fs::create_directories(sim.out_dir);
      echo_config(*simulate, sim.out_dir / "simulate.toml");
      const Manifest m = cmd_simulate(sim);
      out << "wrote " << m.rows.size() << " utterance pairs and "
          << (sim.out_dir / "manifest.jsonl").string() << '\n';
    } else if (*preprocess) {
      validate(pre);
      echo_config(*preprocess, sibling(pre.out, ".toml"));
      const ImageSet set = cmd_preprocess(pre);
      out << "wrote " << set.entries.size() << " image pairs to " << pre.out.string() << '\n';
    } else if (*train) {
      validate(tr);
      net::network_preset(tr.preset);
      echo_config(*train, sibling(tr.out, ".toml"));
      const net::TrainingState state = cmd_train(tr, out);
      out << "final mse " << (state.epoch_loss.empty() ? 0.0 : state.epoch_loss.back())
          << ", checkpoint " << tr.out.string() << '\n';
    } else if (*enhance) {
      validate(enh);
      echo_config(*enhance, enh.out_dir.empty() ? sibling(enh.output, ".toml")
                                           : enh.out_dir / "enhance.toml");
      cmd_enhance(enh);
      out << "enhanced "
          << (enh.out_dir.empty() ? enh.output.string() : enh.out_dir.string()) << '\n';
    } else if (*evaluate) {
      validate(ev);
      if (!ev.out.empty()) echo_config(*evaluate, sibling(ev.out, ".toml"));
      out << format_table(cmd_evaluate(ev));
    }
  } catch (const ConfigError& e) {
    return report(err, "configuration error", e, 1);
  } catch (const NumericalError& e) {
    return report(err, "numerical failure", e, 3);
  } catch (const DataError& e) {
    return report(err, "data error", e, 2);
  } catch (const ShapeError& e) {
    return report(err, "data error", e, 2);
  } catch (const fs::filesystem_error& e) {
    return report(err, "file system error", e, 2);
  } catch (const std::exception& e) {
    return report(err, "error", e, 1);
  }
  return 0;
}

}  // namespace skipconv::cli
