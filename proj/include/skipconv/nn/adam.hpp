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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skipconv/nn/tensor.hpp"

namespace skipconv::nn {

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment buffers mirror the parameter list passed to adam_step,
// in order.
struct AdamState {
  AdamConfig config;
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  std::uint64_t step_count = 0;
};

// One bias-corrected Adam update using each parameter's gradient buffer.
// All gradients are validated before anything is mutated; a non-finite
// gradient throws NumericalError and leaves parameters and state untouched.
// An element whose gradient is exactly zero keeps its value while its moments
// decay.
void adam_step(std::span<Tensor* const> params, AdamState& state);

}  // namespace skipconv::nn
