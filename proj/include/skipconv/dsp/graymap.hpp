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
#include <filesystem>
#include <vector>

#include "skipconv/dsp/stft.hpp"

namespace skipconv::dsp {

// Binary 8-bit PGM (P5) of a dB spectrogram: frames run left to right, the
// highest bin is the top row. [lo_db, hi_db] maps linearly onto [0, 255],
// values outside saturate.
std::vector<std::uint8_t> encode_graymap(const SpectralGrid& db,
                                         double lo_db = -80.0,
                                         double hi_db = 20.0);
void write_graymap(const std::filesystem::path& path, const SpectralGrid& db,
                   double lo_db = -80.0, double hi_db = 20.0);

}  // namespace skipconv::dsp
