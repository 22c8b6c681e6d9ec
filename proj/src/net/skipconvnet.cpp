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

#include "skipconv/net/skipconvnet.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::net {

using nn::Tensor;

namespace {

void accumulate(Tensor& param, const Tensor& grad) {
  auto g = param.grad();
  const auto src = grad.data();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += src[i];
}

void accumulate(nn::Conv2dParams& p, const nn::ConvGrads& g) {
  accumulate(p.weight, g.weight);
  accumulate(p.bias, g.bias);
}

void accumulate(nn::ConvTranspose2dParams& p, const nn::ConvGrads& g) {
  accumulate(p.weight, g.weight);
  accumulate(p.bias, g.bias);
}

void accumulate(nn::BatchNormParams& p, const nn::BatchNormGrads& g) {
  accumulate(p.gamma, g.gamma);
  accumulate(p.beta, g.beta);
}

std::string list_to_string(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

SkipBlock make_skip_block(std::size_t channels, double eps, double momentum) {
  return {nn::make_conv2d(channels, channels, 5, 1, 2),
          nn::BatchNormParams::make(channels, eps, momentum)};
}

Tensor skip_block_forward(const Tensor& x, SkipBlock& block, double slope, bool training,
                          SkipBlockCache* cache) {
  if (x.rank() != 4 || x.dim(1) != block.conv.in_channels() ||
      block.conv.in_channels() != block.conv.out_channels()) {
    throw ShapeError("skip block: input " + nn::shape_to_string(x.shape()) +
                     " does not fit a " + std::to_string(block.conv.in_channels()) +
                     "-channel block");
  }
  Tensor z = nn::conv2d_forward(nn::leaky_relu(x, slope), block.conv);
  nn::add_inplace(z, x);
  if (cache) cache->input = x;
  return nn::batch_norm_forward(z, block.norm, training, cache ? &cache->norm : nullptr);
}

SkipBlockGrads skip_block_backward(const Tensor& grad_out, const SkipBlock& block,
                                   double slope, const SkipBlockCache& cache) {
  SkipBlockGrads g;
  g.norm = nn::batch_norm_backward(grad_out, block.norm, cache.norm);
  // The activation is recomputed rather than cached.
  const Tensor act = nn::leaky_relu(cache.input, slope);
  g.conv = nn::conv2d_backward(act, block.conv, g.norm.input, true);
  g.input = nn::leaky_relu_backward(cache.input, g.conv.input, slope);
  nn::add_inplace(g.input, g.norm.input);
  g.conv.input = Tensor{};
  return g;
}

NetworkConfig NetworkConfig::full() { return NetworkConfig{}; }

NetworkConfig NetworkConfig::desk() {
  NetworkConfig cfg;
  cfg.enc_channels = {16, 32, 64, 64, 64, 64, 64, 64};
  return cfg;
}

NetworkConfig NetworkConfig::reduced() {
  NetworkConfig cfg;
  cfg.enc_channels = {4, 4, 8, 8, 8, 8, 8, 8};
  return cfg;
}

NetworkConfig NetworkConfig::baseline(NetworkConfig cfg) {
  std::fill(cfg.skip_counts.begin(), cfg.skip_counts.end(), 0);
  return cfg;
}

NetworkConfig network_preset(const std::string& name) {
  if (name == "full") return NetworkConfig::full();
  if (name == "desk") return NetworkConfig::desk();
  if (name == "reduced") return NetworkConfig::reduced();
  throw ConfigError("unknown network preset '" + name +
                    "' (expected full, desk or reduced)");
}

void validate(const NetworkConfig& cfg) {
  if (cfg.depth == 0 || cfg.depth > 16) {
    throw ConfigError("network: depth must be in [1, 16], got " +
                      std::to_string(cfg.depth));
  }
  if (cfg.input_size != (std::size_t{1} << cfg.depth)) {
    throw ConfigError("network: input size " + std::to_string(cfg.input_size) +
                      " must equal 2^depth = " +
                      std::to_string(std::size_t{1} << cfg.depth) +
                      " so the bottleneck is a single pixel");
  }
  if (cfg.enc_channels.size() != cfg.depth) {
    throw ConfigError("network: " + std::to_string(cfg.enc_channels.size()) +
                      " encoder widths for depth " + std::to_string(cfg.depth));
  }
  for (std::size_t c : cfg.enc_channels) {
    if (c == 0) throw ConfigError("network: encoder widths must be positive");
  }
  if (cfg.skip_counts.size() != cfg.depth) {
    throw ConfigError("network: " + std::to_string(cfg.skip_counts.size()) +
                      " skip counts for depth " + std::to_string(cfg.depth));
  }
  const bool pass_through = std::all_of(cfg.skip_counts.begin(), cfg.skip_counts.end(),
                                        [](std::size_t k) { return k == 0; });
  if (!pass_through) {
    bool decreasing = true;
    for (std::size_t i = 1; i < cfg.depth; ++i) {
      decreasing = decreasing && cfg.skip_counts[i] < cfg.skip_counts[i - 1];
    }
    if (!decreasing || cfg.skip_counts.front() != 8 || cfg.skip_counts.back() != 1) {
      throw ConfigError("network: skip counts " + list_to_string(cfg.skip_counts) +
                        " must decrease strictly from 8 at the first layer to 1 at "
                        "the bottleneck (or all be 0 for a plain U-Net)");
    }
  }
  if (!(cfg.leaky_slope >= 0.0 && cfg.leaky_slope < 1.0) ||
      !(cfg.decoder_slope >= 0.0 && cfg.decoder_slope < 1.0)) {
    throw ConfigError("network: activation slopes must lie in [0, 1)");
  }
  if (!(cfg.norm_eps > 0.0) || !(cfg.norm_momentum > 0.0 && cfg.norm_momentum <= 1.0)) {
    throw ConfigError("network: norm eps must be positive and momentum in (0, 1]");
  }
  if (!(cfg.init_std > 0.0)) {
    throw ConfigError("network: init std must be positive");
  }
}

nlohmann::json to_json(const NetworkConfig& cfg) {
  return {{"depth", cfg.depth},
          {"enc_channels", cfg.enc_channels},
          {"skip_counts", cfg.skip_counts},
          {"input_size", cfg.input_size},
          {"leaky_slope", cfg.leaky_slope},
          {"decoder_slope", cfg.decoder_slope},
          {"norm_eps", cfg.norm_eps},
          {"norm_momentum", cfg.norm_momentum},
          {"init_std", cfg.init_std}};
}

NetworkConfig network_config_from_json(const nlohmann::json& j) {
  NetworkConfig cfg;
  try {
    cfg.depth = j.at("depth").get<std::size_t>();
    cfg.enc_channels = j.at("enc_channels").get<std::vector<std::size_t>>();
    cfg.skip_counts = j.at("skip_counts").get<std::vector<std::size_t>>();
    cfg.input_size = j.at("input_size").get<std::size_t>();
    cfg.leaky_slope = j.at("leaky_slope").get<double>();
    cfg.decoder_slope = j.at("decoder_slope").get<double>();
    cfg.norm_eps = j.at("norm_eps").get<double>();
    cfg.norm_momentum = j.at("norm_momentum").get<double>();
    cfg.init_std = j.at("init_std").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("network config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

SkipConvNet::SkipConvNet(const NetworkConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
  validate(cfg_);
  const std::size_t depth = cfg_.depth;
  const auto& ch = cfg_.enc_channels;
  auto norm = [&](std::size_t c) {
    return nn::BatchNormParams::make(c, cfg_.norm_eps, cfg_.norm_momentum);
  };
  for (std::size_t l = 0; l < depth; ++l) {
    EncoderLayer layer;
    layer.conv = nn::make_conv2d(l == 0 ? 1 : ch[l - 1], ch[l], 5, 2, 2);
    layer.has_norm = l > 0;
    if (layer.has_norm) layer.norm = norm(ch[l]);
    encoder_.push_back(std::move(layer));
    std::vector<SkipBlock> chain;
    for (std::size_t b = 0; b < cfg_.skip_counts[l]; ++b) {
      chain.push_back(make_skip_block(ch[l], cfg_.norm_eps, cfg_.norm_momentum));
    }
    skips_.push_back(std::move(chain));
  }
  for (std::size_t j = 0; j < depth; ++j) {
    const std::size_t level = depth - 1 - j;  // skip level feeding this layer
    const std::size_t in = j == 0 ? ch[level] : 2 * ch[level];
    const bool last = j + 1 == depth;
    const std::size_t out = last ? 1 : ch[level - 1];
    DecoderLayer layer;
    layer.conv = nn::make_conv_transpose2d(in, out, 2, 2);
    layer.has_norm = !last;
    if (layer.has_norm) layer.norm = norm(out);
    decoder_.push_back(std::move(layer));
  }
  // Weights drawn in parameter order; biases, shifts start at zero and
  // scales at one.
  std::mt19937_64 rng(seed);
  for (const NamedTensor& p : parameters()) {
    if (p.name.ends_with(".weight")) nn::init_normal(*p.tensor, cfg_.init_std, rng);
  }
}

std::vector<NamedTensor> SkipConvNet::parameters() {
  std::vector<NamedTensor> out;
  auto add_norm = [&](const std::string& prefix, nn::BatchNormParams& n) {
    out.push_back({prefix + ".norm.gamma", &n.gamma});
    out.push_back({prefix + ".norm.beta", &n.beta});
  };
  for (std::size_t l = 0; l < encoder_.size(); ++l) {
    const std::string prefix = "enc" + std::to_string(l + 1);
    out.push_back({prefix + ".conv.weight", &encoder_[l].conv.weight});
    out.push_back({prefix + ".conv.bias", &encoder_[l].conv.bias});
    if (encoder_[l].has_norm) add_norm(prefix, encoder_[l].norm);
  }
  for (std::size_t l = 0; l < skips_.size(); ++l) {
    for (std::size_t b = 0; b < skips_[l].size(); ++b) {
      const std::string prefix =
          "skip" + std::to_string(l + 1) + "." + std::to_string(b + 1);
      out.push_back({prefix + ".conv.weight", &skips_[l][b].conv.weight});
      out.push_back({prefix + ".conv.bias", &skips_[l][b].conv.bias});
      add_norm(prefix, skips_[l][b].norm);
    }
  }
  for (std::size_t j = 0; j < decoder_.size(); ++j) {
    const std::string prefix = "dec" + std::to_string(j + 1);
    out.push_back({prefix + ".conv.weight", &decoder_[j].conv.weight});
    out.push_back({prefix + ".conv.bias", &decoder_[j].conv.bias});
    if (decoder_[j].has_norm) add_norm(prefix, decoder_[j].norm);
  }
  return out;
}

std::vector<NamedTensor> SkipConvNet::buffers() {
  std::vector<NamedTensor> out;
  auto add = [&](const std::string& prefix, nn::BatchNormParams& n) {
    out.push_back({prefix + ".norm.running_mean", &n.running_mean});
    out.push_back({prefix + ".norm.running_var", &n.running_var});
  };
  for (std::size_t l = 0; l < encoder_.size(); ++l) {
    if (encoder_[l].has_norm) add("enc" + std::to_string(l + 1), encoder_[l].norm);
  }
  for (std::size_t l = 0; l < skips_.size(); ++l) {
    for (std::size_t b = 0; b < skips_[l].size(); ++b) {
      add("skip" + std::to_string(l + 1) + "." + std::to_string(b + 1),
          skips_[l][b].norm);
    }
  }
  for (std::size_t j = 0; j < decoder_.size(); ++j) {
    if (decoder_[j].has_norm) add("dec" + std::to_string(j + 1), decoder_[j].norm);
  }
  return out;
}

std::size_t SkipConvNet::parameter_count() const {
  std::size_t n = 0;
  // parameters() only hands out pointers; nothing is modified here.
  for (const NamedTensor& p : const_cast<SkipConvNet*>(this)->parameters()) {
    n += p.tensor->numel();
  }
  return n;
}

void SkipConvNet::zero_grad() {
  for (const NamedTensor& p : parameters()) p.tensor->zero_grad();
}

void SkipConvNet::clear_cache() {
  cached_ = false;
  enc_cache_.clear();
  skip_cache_.clear();
  dec_cache_.clear();
}

Tensor SkipConvNet::skip_forward(std::size_t level, const Tensor& x, bool training) {
  Tensor h = x;
  for (std::size_t b = 0; b < skips_[level].size(); ++b) {
    h = skip_block_forward(h, skips_[level][b], cfg_.leaky_slope, training,
                           training ? &skip_cache_[level][b] : nullptr);
  }
  return h;
}

Tensor SkipConvNet::skip_backward(std::size_t level, Tensor grad) {
  for (std::size_t b = skips_[level].size(); b-- > 0;) {
    SkipBlock& blk = skips_[level][b];
    SkipBlockGrads g =
        skip_block_backward(grad, blk, cfg_.leaky_slope, skip_cache_[level][b]);
    accumulate(blk.conv, g.conv);
    accumulate(blk.norm, g.norm);
    grad = std::move(g.input);
    skip_cache_[level][b] = SkipBlockCache{};
  }
  return grad;
}

Tensor SkipConvNet::forward(const Tensor& x, bool training) {
  const std::size_t depth = cfg_.depth;
  const std::size_t s = cfg_.input_size;
  if (x.rank() != 4 || x.dim(1) != 1 || x.dim(2) != s || x.dim(3) != s ||
      x.dim(0) == 0) {
    throw ShapeError("network input must be (B, 1, " + std::to_string(s) + ", " +
                     std::to_string(s) + "), got " + nn::shape_to_string(x.shape()));
  }
  clear_cache();
  trace_ = ShapeTrace{};
  if (training) {
    enc_cache_.resize(depth);
    dec_cache_.resize(depth);
    skip_cache_.resize(depth);
    for (std::size_t l = 0; l < depth; ++l) skip_cache_[l].resize(skips_[l].size());
  }

  std::vector<Tensor> skip_out(depth);
  Tensor h = x;
  for (std::size_t l = 0; l < depth; ++l) {
    EncoderLayer& layer = encoder_[l];
    Tensor z = nn::conv2d_forward(
        l == 0 ? h : nn::leaky_relu(h, cfg_.leaky_slope), layer.conv);
    if (layer.has_norm) {
      z = nn::batch_norm_forward(z, layer.norm, training,
                                 training ? &enc_cache_[l].norm : nullptr);
    }
    if (training) enc_cache_[l].input = std::move(h);
    trace_.encoder.push_back(z.shape());
    skip_out[l] = skip_forward(l, z, training);
    trace_.skip.push_back(skip_out[l].shape());
    h = std::move(z);
  }

  Tensor d;
  for (std::size_t j = 0; j < depth; ++j) {
    DecoderLayer& layer = decoder_[j];
    const std::size_t level = depth - 1 - j;
    Tensor in = j == 0 ? std::move(skip_out[level])
                       : nn::concat_channels(d, skip_out[level]);
    skip_out[level] = Tensor{};
    d = nn::conv_transpose2d_forward(nn::leaky_relu(in, cfg_.decoder_slope),
                                     layer.conv);
    if (layer.has_norm) {
      d = nn::batch_norm_forward(d, layer.norm, training,
                                 training ? &dec_cache_[j].norm : nullptr);
    }
    if (training) dec_cache_[j].input = std::move(in);
    trace_.decoder.push_back(d.shape());
  }
  cached_ = training;
  return d;
}

Tensor SkipConvNet::backward(const Tensor& grad_out) {
  if (!cached_) {
    throw ConfigError("backward called without a preceding training forward");
  }
  const std::size_t depth = cfg_.depth;
  if (grad_out.shape() != trace_.decoder.back()) {
    throw ShapeError("backward: gradient " + nn::shape_to_string(grad_out.shape()) +
                     " does not match output " +
                     nn::shape_to_string(trace_.decoder.back()));
  }
  std::vector<Tensor> skip_grad(depth);
  Tensor g = grad_out;
  for (std::size_t j = depth; j-- > 0;) {
    DecoderLayer& layer = decoder_[j];
    LayerCache& cache = dec_cache_[j];
    if (layer.has_norm) {
      nn::BatchNormGrads bn = nn::batch_norm_backward(g, layer.norm, cache.norm);
      accumulate(layer.norm, bn);
      g = std::move(bn.input);
    }
    const Tensor act = nn::leaky_relu(cache.input, cfg_.decoder_slope);
    nn::ConvGrads cg = nn::conv_transpose2d_backward(act, layer.conv, g, true);
    accumulate(layer.conv, cg);
    Tensor gin = nn::leaky_relu_backward(cache.input, cg.input, cfg_.decoder_slope);
    cache = LayerCache{};
    const std::size_t level = depth - 1 - j;
    if (j == 0) {
      skip_grad[level] = std::move(gin);
    } else {
      auto [gd, gs] = nn::split_channels(gin, cfg_.enc_channels[level]);
      skip_grad[level] = std::move(gs);
      g = std::move(gd);
    }
  }

  Tensor from_above;
  for (std::size_t l = depth; l-- > 0;) {
    Tensor total = skip_backward(l, std::move(skip_grad[l]));
    if (l + 1 < depth) nn::add_inplace(total, from_above);
    EncoderLayer& layer = encoder_[l];
    LayerCache& cache = enc_cache_[l];
    if (layer.has_norm) {
      nn::BatchNormGrads bn = nn::batch_norm_backward(total, layer.norm, cache.norm);
      accumulate(layer.norm, bn);
      total = std::move(bn.input);
    }
    if (l == 0) {
      nn::ConvGrads cg = nn::conv2d_backward(cache.input, layer.conv, total, true);
      accumulate(layer.conv, cg);
      from_above = std::move(cg.input);
    } else {
      const Tensor act = nn::leaky_relu(cache.input, cfg_.leaky_slope);
      nn::ConvGrads cg = nn::conv2d_backward(act, layer.conv, total, true);
      accumulate(layer.conv, cg);
      from_above = nn::leaky_relu_backward(cache.input, cg.input, cfg_.leaky_slope);
    }
    cache = LayerCache{};
  }
  clear_cache();
  return from_above;
}

}  // namespace skipconv::net
