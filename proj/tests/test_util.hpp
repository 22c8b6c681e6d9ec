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
#include <random>

#include "skipconv/nn/tensor.hpp"

namespace skipconv::testing {

inline nn::Tensor random_tensor(nn::Shape shape, std::mt19937_64& rng,
                                double lo = -1.0, double hi = 1.0) {
  nn::Tensor t(std::move(shape));
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

// Values bounded away from zero so piecewise-linear kinks are not crossed by
// a finite-difference step.
inline nn::Tensor random_tensor_off_kink(nn::Shape shape, std::mt19937_64& rng,
                                         double margin = 1e-3) {
  nn::Tensor t(std::move(shape));
  std::uniform_real_distribution<double> dist(margin, 1.0);
  std::bernoulli_distribution sign(0.5);
  for (double& v : t.data()) v = sign(rng) ? dist(rng) : -dist(rng);
  return t;
}

}  // namespace skipconv::testing
