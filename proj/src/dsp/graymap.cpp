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

#include "skipconv/dsp/graymap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::dsp {

std::vector<std::uint8_t> encode_graymap(const SpectralGrid& db, double lo_db,
                                         double hi_db) {
  if (!(hi_db > lo_db)) throw ConfigError("graymap: empty dB range");
  const std::string header = "P5\n" + std::to_string(db.frames) + " " +
                             std::to_string(db.bins) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + db.frames * db.bins);
  for (std::size_t row = 0; row < db.bins; ++row) {
    const std::size_t f = db.bins - 1 - row;
    for (std::size_t t = 0; t < db.frames; ++t) {
      const double v = std::clamp(db.at(t, f), lo_db, hi_db);
      out.push_back(static_cast<std::uint8_t>(
          std::lround(255.0 * (v - lo_db) / (hi_db - lo_db))));
    }
  }
  return out;
}

void write_graymap(const std::filesystem::path& path, const SpectralGrid& db,
                   double lo_db, double hi_db) {
  const auto bytes = encode_graymap(db, lo_db, hi_db);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace skipconv::dsp
