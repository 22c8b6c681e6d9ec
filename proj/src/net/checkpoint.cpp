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
#include "skipconv/net/checkpoint.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "skipconv/error.hpp"

namespace skipconv::net {

namespace {

constexpr const char* kFormat = "skipconv-checkpoint";

nn::Tensor vector_tensor(const std::vector<double>& v) {
  return nn::Tensor({v.size()}, v);
}

// Copies `src` into `dst` after checking the stored shape.
void restore(nn::Tensor& dst, const nn::Tensor& src, const std::string& name) {
  if (src.shape() != dst.shape()) {
    throw DataError("checkpoint: tensor '" + name + "' has shape " +
                    nn::shape_to_string(src.shape()) + ", expected " +
                    nn::shape_to_string(dst.shape()));
  }
  std::copy(src.data().begin(), src.data().end(), dst.data().begin());
}

}  // namespace

TrainingState::TrainingState(const NetworkConfig& cfg, std::uint64_t seed_,
                             const nn::AdamConfig& adam_cfg)
    : net(cfg, seed_), seed(seed_) {
  adam.config = adam_cfg;
}

nn::TensorArchive to_archive(const TrainingState& state) {
  // parameters() hands out mutable pointers; work on a copy to keep the
  // state const.
  SkipConvNet net = state.net;
  const nn::AdamState& adam = state.adam;
  nlohmann::json header = {
      {"format", kFormat},
      {"network", to_json(net.config())},
      {"seed", state.seed},
      {"epoch", state.epoch},
      {"adam",
       {{"lr", adam.config.lr},
        {"beta1", adam.config.beta1},
        {"beta2", adam.config.beta2},
        {"eps", adam.config.eps},
        {"step_count", adam.step_count},
        {"has_moments", !adam.m.empty()}}},
      {"metadata", state.metadata}};

  nn::TensorArchive archive;
  archive.header = header.dump();
  const std::vector<NamedTensor> params = net.parameters();
  for (const NamedTensor& p : params) {
    archive.tensors.emplace_back(p.name, nn::Tensor(p.tensor->shape(), p.tensor->values()));
  }
  for (const NamedTensor& b : net.buffers()) {
    archive.tensors.emplace_back(b.name, nn::Tensor(b.tensor->shape(), b.tensor->values()));
  }
  if (!adam.m.empty()) {
    if (adam.m.size() != params.size() || adam.v.size() != params.size()) {
      throw ShapeError("checkpoint: optimizer tracks " + std::to_string(adam.m.size()) +
                       " tensors, network has " + std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      archive.tensors.emplace_back("adam.m." + params[i].name,
                                   nn::Tensor(params[i].tensor->shape(), adam.m[i]));
      archive.tensors.emplace_back("adam.v." + params[i].name,
                                   nn::Tensor(params[i].tensor->shape(), adam.v[i]));
    }
  }
  archive.tensors.emplace_back("trace.step_loss", vector_tensor(state.step_loss));
  archive.tensors.emplace_back("trace.epoch_loss", vector_tensor(state.epoch_loss));
  return archive;
}

TrainingState from_archive(const nn::TensorArchive& archive) {
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(archive.header);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: unreadable header: ") + e.what());
  }
  if (header.value("format", std::string()) != kFormat) {
    throw DataError("checkpoint: archive is not a training checkpoint");
  }
  NetworkConfig cfg;
  nn::AdamConfig adam_cfg;
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
  std::uint64_t step_count = 0;
  bool has_moments = false;
  nlohmann::json metadata;
  try {
    cfg = network_config_from_json(header.at("network"));
    seed = header.at("seed").get<std::uint64_t>();
    epoch = header.at("epoch").get<std::uint64_t>();
    const nlohmann::json& a = header.at("adam");
    adam_cfg.lr = a.at("lr").get<double>();
    adam_cfg.beta1 = a.at("beta1").get<double>();
    adam_cfg.beta2 = a.at("beta2").get<double>();
    adam_cfg.eps = a.at("eps").get<double>();
    step_count = a.at("step_count").get<std::uint64_t>();
    has_moments = a.at("has_moments").get<bool>();
    metadata = header.value("metadata", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: malformed header: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }

  TrainingState state(cfg, seed, adam_cfg);
  state.epoch = epoch;
  state.adam.step_count = step_count;
  state.metadata = std::move(metadata);
  const std::vector<NamedTensor> params = state.net.parameters();
  for (const NamedTensor& p : params) restore(*p.tensor, archive.get(p.name), p.name);
  for (const NamedTensor& b : state.net.buffers()) {
    restore(*b.tensor, archive.get(b.name), b.name);
  }
  if (has_moments) {
    for (const NamedTensor& p : params) {
      const std::string m_name = "adam.m." + p.name;
      const std::string v_name = "adam.v." + p.name;
      nn::Tensor m(p.tensor->shape());
      nn::Tensor v(p.tensor->shape());
      restore(m, archive.get(m_name), m_name);
      restore(v, archive.get(v_name), v_name);
      state.adam.m.push_back(m.values());
      state.adam.v.push_back(v.values());
    }
  }
  state.step_loss = archive.get("trace.step_loss").values();
  state.epoch_loss = archive.get("trace.epoch_loss").values();
  const std::size_t expected = params.size() + state.net.buffers().size() +
                               (has_moments ? 2 * params.size() : 0) + 2;
  if (archive.tensors.size() != expected) {
    throw DataError("checkpoint: " + std::to_string(archive.tensors.size()) +
                    " tensors, expected " + std::to_string(expected));
  }
  return state;
}

void save_checkpoint(const std::filesystem::path& path, const TrainingState& state) {
  nn::write_archive(path, to_archive(state));
}

TrainingState load_checkpoint(const std::filesystem::path& path) {
  return from_archive(nn::read_archive(path));
}

}  // namespace skipconv::net
