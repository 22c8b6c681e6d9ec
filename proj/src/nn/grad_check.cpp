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

#include "skipconv/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "skipconv/error.hpp"

namespace skipconv::nn {

GradCheckReport finite_diff_check(const std::function<double()>& objective,
                                  std::span<double> values,
                                  std::span<const double> analytic,
                                  double tolerance, double h,
                                  std::span<const std::size_t> indices) {
  if (values.size() != analytic.size()) {
    throw ShapeError("finite_diff_check: " + std::to_string(values.size()) +
                     " values but " + std::to_string(analytic.size()) +
                     " analytic gradients");
  }
  double scale = 0.0;
  for (double a : analytic) scale = std::max(scale, std::abs(a));
  const double floor = std::max(1e-3 * scale, 1e-300);

  GradCheckReport report;
  auto check = [&](std::size_t i) {
    const double saved = values[i];
    values[i] = saved + h;
    const double up = objective();
    values[i] = saved - h;
    const double down = objective();
    values[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double abs_err = std::abs(analytic[i] - numeric);
    const double rel_err =
        abs_err / std::max({std::abs(analytic[i]), std::abs(numeric), floor});
    report.max_abs_error = std::max(report.max_abs_error, abs_err);
    if (rel_err > report.max_rel_error || report.checked == 0) {
      report.max_rel_error = rel_err;
      report.worst_index = i;
    }
    ++report.checked;
  };
  if (indices.empty()) {
    for (std::size_t i = 0; i < values.size(); ++i) check(i);
  } else {
    for (std::size_t i : indices) check(i);
  }
  report.passed = report.max_rel_error < tolerance;
  return report;
}

}  // namespace skipconv::nn
