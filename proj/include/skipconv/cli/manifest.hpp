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
#include <optional>
#include <string>
#include <vector>

namespace skipconv::cli {

// One utterance of a dataset. Stored as JSON Lines; relative paths are
// resolved against the manifest's directory.
struct ManifestRow {
  std::string id;
  double t60 = 0.0;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  std::filesystem::path clean;
  std::filesystem::path reverberant;
  std::optional<std::filesystem::path> enhanced;
  std::uint32_t clean_crc32 = 0;
  std::uint32_t reverberant_crc32 = 0;

  bool operator==(const ManifestRow&) const = default;
};

struct Manifest {
  std::filesystem::path dir;  // base for relative paths
  std::vector<ManifestRow> rows;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

// Throws DataError naming the file and line on malformed input.
Manifest read_manifest(const std::filesystem::path& path);
std::string format_manifest(const std::vector<ManifestRow>& rows);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

// Path of `target` relative to `base` when both are made absolute.
std::filesystem::path relative_to(const std::filesystem::path& target,
                                  const std::filesystem::path& base);

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes);

}  // namespace skipconv::cli
