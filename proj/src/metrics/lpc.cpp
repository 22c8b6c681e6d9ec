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

#include "skipconv/metrics/lpc.hpp"

#include <string>

#include "skipconv/error.hpp"

namespace skipconv::metrics {

std::vector<double> autocorrelation(std::span<const double> frame,
                                    std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag && lag < frame.size(); ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < frame.size(); ++n) acc += frame[n] * frame[n - lag];
    r[lag] = acc;
  }
  return r;
}

LpcResult levinson_durbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) {
    throw ShapeError("levinson_durbin: need " + std::to_string(order + 1) +
                     " autocorrelation lags, got " + std::to_string(r.size()));
  }
  if (!(r[0] > 0.0)) {
    throw DataError("lpc: frame has zero energy");
  }
  LpcResult out;
  out.a.assign(order + 1, 0.0);
  out.a[0] = 1.0;
  double err = r[0];
  std::vector<double> prev(order + 1);
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += out.a[j] * r[i - j];
    const double k = -acc / err;
    const double next_err = err * (1.0 - k * k);
    // A numerically singular system (e.g. a pure tone) stops the recursion;
    // higher coefficients stay zero.
    if (!(next_err > 1e-12 * r[0])) break;
    prev = out.a;
    for (std::size_t j = 1; j < i; ++j) out.a[j] = prev[j] + k * prev[i - j];
    out.a[i] = k;
    err = next_err;
  }
  out.error = err;
  return out;
}

LpcResult lpc(std::span<const double> frame, std::size_t order) {
  const std::vector<double> r = autocorrelation(frame, order);
  return levinson_durbin(r, order);
}

std::vector<double> lpc_cepstrum(std::span<const double> a, std::size_t count) {
  const std::size_t p = a.size() - 1;
  std::vector<double> c(count + 1, 0.0);
  for (std::size_t n = 1; n <= count; ++n) {
    double acc = n <= p ? -a[n] : 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (n - k <= p) acc -= static_cast<double>(k) / n * c[k] * a[n - k];
    }
    c[n] = acc;
  }
  return {c.begin() + 1, c.end()};
}

double toeplitz_quadratic_form(std::span<const double> a,
                               std::span<const double> r) {
  if (r.size() < a.size()) {
    throw ShapeError("toeplitz_quadratic_form: " + std::to_string(r.size()) +
                     " lags for " + std::to_string(a.size()) + " coefficients");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      row += r[i > j ? i - j : j - i] * a[j];
    }
    total += a[i] * row;
  }
  return total;
}

}  // namespace skipconv::metrics
