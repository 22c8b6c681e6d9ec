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

#include "skipconv/dsp/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "skipconv/error.hpp"

namespace skipconv::dsp {
namespace {

// fftw_malloc'd scratch pair sized for one transform length.
struct Buffers {
  explicit Buffers(std::size_t n)
      : real(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        complex(static_cast<fftw_complex*>(
            fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {}
  ~Buffers() {
    fftw_free(real);
    fftw_free(complex);
  }
  Buffers(const Buffers&) = delete;
  Buffers& operator=(const Buffers&) = delete;

  double* real;
  fftw_complex* complex;
};

struct Plans {
  fftw_plan forward;
  fftw_plan inverse;
};

// Planning is not thread-safe in FFTW; execution on fresh arrays is.
Plans plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Buffers scratch(n);
  const int len = static_cast<int>(n);
  Plans plans{
      fftw_plan_dft_r2c_1d(len, scratch.real, scratch.complex, FFTW_ESTIMATE),
      fftw_plan_dft_c2r_1d(len, scratch.complex, scratch.real, FFTW_ESTIMATE)};
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> input,
                                       std::size_t n) {
  if (n == 0) throw ConfigError("rfft: zero length");
  const Plans plans = plans_for(n);
  Buffers buf(n);
  const std::size_t copy = std::min(n, input.size());
  std::copy_n(input.begin(), copy, buf.real);
  std::fill(buf.real + copy, buf.real + n, 0.0);
  fftw_execute_dft_r2c(plans.forward, buf.real, buf.complex);
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = {buf.complex[k][0], buf.complex[k][1]};
  }
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n) {
  if (n == 0) throw ConfigError("irfft: zero length");
  if (spectrum.size() != n / 2 + 1) {
    throw ShapeError("irfft: expected " + std::to_string(n / 2 + 1) +
                     " bins, got " + std::to_string(spectrum.size()));
  }
  const Plans plans = plans_for(n);
  Buffers buf(n);
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    buf.complex[k][0] = spectrum[k].real();
    buf.complex[k][1] = spectrum[k].imag();
  }
  // c2r destroys its input, which is scratch here.
  fftw_execute_dft_c2r(plans.inverse, buf.complex, buf.real);
  std::vector<double> out(buf.real, buf.real + n);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace skipconv::dsp
