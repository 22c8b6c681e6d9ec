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
#include "skipconv/cli/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "skipconv/error.hpp"
#include "skipconv/nn/tensor_archive.hpp"

namespace skipconv::cli {

namespace fs = std::filesystem;

fs::path Manifest::resolve(const fs::path& p) const {
  return p.is_absolute() ? p : dir / p;
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  Manifest manifest;
  manifest.dir = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      ManifestRow row;
      row.id = j.at("id").get<std::string>();
      row.t60 = j.at("t60").get<double>();
      row.snr_db = j.value("snr_db", 0.0);
      row.seed = j.value("seed", std::uint64_t{0});
      row.clean = j.at("clean").get<std::string>();
      row.reverberant = j.at("reverberant").get<std::string>();
      if (j.contains("enhanced")) row.enhanced = j.at("enhanced").get<std::string>();
      row.clean_crc32 = j.value("clean_crc32", std::uint32_t{0});
      row.reverberant_crc32 = j.value("reverberant_crc32", std::uint32_t{0});
      manifest.rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (manifest.rows.empty()) throw DataError("manifest " + path.string() + " is empty");
  return manifest;
}

std::string format_manifest(const std::vector<ManifestRow>& rows) {
  std::ostringstream out;
  for (const ManifestRow& row : rows) {
    nlohmann::ordered_json j;
    j["id"] = row.id;
    j["t60"] = row.t60;
    j["snr_db"] = row.snr_db;
    j["seed"] = row.seed;
    j["clean"] = row.clean.generic_string();
    j["reverberant"] = row.reverberant.generic_string();
    if (row.enhanced) j["enhanced"] = row.enhanced->generic_string();
    j["clean_crc32"] = row.clean_crc32;
    j["reverberant_crc32"] = row.reverberant_crc32;
    out << j.dump() << '\n';
  }
  return out.str();
}

void write_manifest(const fs::path& path, const std::vector<ManifestRow>& rows) {
  nn::write_file_atomic(path, format_manifest(rows));
}

fs::path relative_to(const fs::path& target, const fs::path& base) {
  return fs::absolute(target).lexically_normal().lexically_relative(
      fs::absolute(base).lexically_normal());
}

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes) {
  uLong c = crc32(0L, Z_NULL, 0);
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
    c = crc32(c, bytes.data() + pos, chunk);
    pos += chunk;
  }
  return static_cast<std::uint32_t>(c);
}

}  // namespace skipconv::cli
