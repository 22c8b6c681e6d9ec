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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace skipconv::dsp {

// Real-input DFT of length n (input zero-padded or truncated to n); returns
// the n/2 + 1 non-negative-frequency bins, unnormalized.
std::vector<std::complex<double>> rfft(std::span<const double> input,
                                       std::size_t n);

// Inverse of rfft including the 1/n factor; `spectrum` holds n/2 + 1 bins.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n);

}  // namespace skipconv::dsp
