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

#include <cstddef>
#include <functional>
#include <span>

namespace skipconv::nn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  bool passed = false;
};

// Compares `analytic` against central differences of `objective` taken by
// perturbing `values` in place (each entry is restored afterwards).
//
// Relative error per entry is |a - n| / max(|a|, |n|, floor) where floor is
// 1e-3 of the largest analytic magnitude, so entries that are numerically
// zero relative to the gradient scale do not dominate. When `indices` is
// empty every entry is checked.
GradCheckReport finite_diff_check(const std::function<double()>& objective,
                                  std::span<double> values,
                                  std::span<const double> analytic,
                                  double tolerance, double h = 1e-5,
                                  std::span<const std::size_t> indices = {});

}  // namespace skipconv::nn
