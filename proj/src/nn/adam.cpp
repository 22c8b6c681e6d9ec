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

#include "skipconv/nn/adam.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "skipconv/error.hpp"

namespace skipconv::nn {

void adam_step(std::span<Tensor* const> params, AdamState& state) {
  if (state.m.empty() && state.v.empty()) {
    for (const Tensor* p : params) {
      state.m.emplace_back(p->numel(), 0.0);
      state.v.emplace_back(p->numel(), 0.0);
    }
  }
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ShapeError("adam_step: state tracks " +
                     std::to_string(state.m.size()) + " parameters, got " +
                     std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor& p = *params[i];
    if (state.m[i].size() != p.numel() || state.v[i].size() != p.numel()) {
      throw ShapeError("adam_step: moment buffers of parameter " +
                       std::to_string(i) + " do not match shape " +
                       shape_to_string(p.shape()));
    }
    if (!p.has_grad()) continue;
    for (double g : p.grad()) {
      if (!std::isfinite(g)) {
        throw NumericalError("adam_step: non-finite gradient in parameter " +
                             std::to_string(i) + " " +
                             shape_to_string(p.shape()));
      }
    }
  }

  const AdamConfig& cfg = state.config;
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double correction1 = 1.0 - std::pow(cfg.beta1, t);
  const double correction2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    std::vector<double>& m = state.m[i];
    std::vector<double>& v = state.v[i];
    if (!p.has_grad()) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        m[j] *= cfg.beta1;
        v[j] *= cfg.beta2;
      }
      continue;
    }
    std::span<const double> grad = std::as_const(p).grad();
    for (std::size_t j = 0; j < p.numel(); ++j) {
      const double g = grad[j];
      m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g;
      v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g * g;
      if (g == 0.0) continue;
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      p[j] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
  }
}

}  // namespace skipconv::nn
