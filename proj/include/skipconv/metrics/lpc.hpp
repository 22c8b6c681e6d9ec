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
#include <span>
#include <vector>

namespace skipconv::metrics {

// Prediction polynomial A(z) = 1 + sum_k a[k] z^-k; a[0] == 1.
struct LpcResult {
  std::vector<double> a;
  double error = 0.0;  // final prediction error power
};

std::vector<double> autocorrelation(std::span<const double> frame,
                                    std::size_t max_lag);

// Levinson-Durbin on the autocorrelation normal equations. Throws DataError
// for a zero-energy frame.
LpcResult lpc(std::span<const double> frame, std::size_t order = 12);
LpcResult levinson_durbin(std::span<const double> r, std::size_t order);

// Cepstrum of 1 / A(z), coefficients c[1..count] (c[0] omitted).
std::vector<double> lpc_cepstrum(std::span<const double> a, std::size_t count);

// a^T R a with R the symmetric Toeplitz matrix built from r.
double toeplitz_quadratic_form(std::span<const double> a,
                               std::span<const double> r);

}  // namespace skipconv::metrics
