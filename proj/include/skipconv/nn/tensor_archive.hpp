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
#include <string>
#include <utility>
#include <vector>

#include "skipconv/nn/tensor.hpp"

namespace skipconv::nn {

// Versioned binary container shared by checkpoints and spectral-image
// archives:
//
//   magic      8 bytes  "SKIPCONV"
//   version    u32
//   header     u64 length + UTF-8 structured text (JSON)
//   count      u64
//   tensors    count x { u32 name length, name, u32 rank, u64 dims[rank],
//                        f64 values[numel] }
//   checksum   u32 CRC-32 of every preceding byte
//
// All integers and floats are little-endian.
inline constexpr std::uint32_t kArchiveVersion = 1;

struct TensorArchive {
  std::string header;
  std::vector<std::pair<std::string, Tensor>> tensors;

  const Tensor& get(const std::string& name) const;
  const Tensor* find(const std::string& name) const;
};

std::vector<std::uint8_t> encode_archive(const TensorArchive& archive);
// Throws DataError on bad magic, version mismatch, truncation or checksum
// failure.
TensorArchive decode_archive(const std::vector<std::uint8_t>& bytes);

// Written to a temporary sibling and renamed into place.
void write_archive(const std::filesystem::path& path,
                   const TensorArchive& archive);
TensorArchive read_archive(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace skipconv::nn
