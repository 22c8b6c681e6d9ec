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

#include "skipconv/nn/tensor_archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "skipconv/error.hpp"

namespace skipconv::nn {
namespace {

constexpr char kMagic[8] = {'S', 'K', 'I', 'P', 'C', 'O', 'N', 'V'};

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(raw), std::end(raw));
  }
  out.insert(out.end(), std::begin(raw), std::end(raw));
}

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& bytes, std::size_t end)
      : bytes_(bytes), end_(end) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(std::begin(raw), std::end(raw));
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

  std::string get_string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return end_ - pos_; }

 private:
  void need(std::size_t n) const {
    if (n > end_ - pos_) throw DataError("archive: truncated data");
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::uint32_t crc(const std::uint8_t* data, std::size_t n) {
  uLong c = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    c = crc32(c, data, chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(c);
}

}  // namespace

const Tensor* TensorArchive::find(const std::string& name) const {
  for (const auto& [key, tensor] : tensors) {
    if (key == name) return &tensor;
  }
  return nullptr;
}

const Tensor& TensorArchive::get(const std::string& name) const {
  const Tensor* t = find(name);
  if (!t) throw DataError("archive: missing tensor '" + name + "'");
  return *t;
}

std::vector<std::uint8_t> encode_archive(const TensorArchive& archive) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put<std::uint32_t>(out, kArchiveVersion);
  put<std::uint64_t>(out, archive.header.size());
  out.insert(out.end(), archive.header.begin(), archive.header.end());
  put<std::uint64_t>(out, archive.tensors.size());
  for (const auto& [name, tensor] : archive.tensors) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.rank()));
    for (std::size_t d : tensor.shape()) put<std::uint64_t>(out, d);
    out.reserve(out.size() + tensor.numel() * sizeof(double));
    for (double v : tensor.data()) put<double>(out, v);
  }
  put<std::uint32_t>(out, crc(out.data(), out.size()));
  return out;
}

TensorArchive decode_archive(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kMagic) + 4 + 4) {
    throw DataError("archive: truncated data");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw DataError("archive: bad magic, not a skipconv archive");
  }
  const std::size_t body = bytes.size() - 4;
  Reader reader(bytes, body);
  reader.get_string(sizeof(kMagic));
  const auto version = reader.get<std::uint32_t>();
  if (version != kArchiveVersion) {
    throw DataError("archive: version " + std::to_string(version) +
                    " unsupported, expected " +
                    std::to_string(kArchiveVersion));
  }
  const std::uint32_t stored = bytes[body] | (bytes[body + 1] << 8) |
                               (bytes[body + 2] << 16) |
                               (static_cast<std::uint32_t>(bytes[body + 3]) << 24);
  if (stored != crc(bytes.data(), body)) {
    throw DataError("archive: checksum mismatch, file is corrupted or truncated");
  }

  TensorArchive archive;
  archive.header = reader.get_string(reader.get<std::uint64_t>());
  const auto count = reader.get<std::uint64_t>();
  for (std::uint64_t t = 0; t < count; ++t) {
    std::string name = reader.get_string(reader.get<std::uint32_t>());
    const auto rank = reader.get<std::uint32_t>();
    Shape shape(rank);
    for (auto& d : shape) d = reader.get<std::uint64_t>();
    const std::size_t numel = shape_numel(shape);
    if (numel > reader.remaining() / sizeof(double)) {
      throw DataError("archive: tensor '" + name + "' exceeds file size");
    }
    std::vector<double> values(numel);
    for (double& v : values) v = reader.get<double>();
    archive.tensors.emplace_back(std::move(name),
                                 Tensor(std::move(shape), std::move(values)));
  }
  if (reader.remaining() != 0) throw DataError("archive: trailing bytes");
  return archive;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

void write_archive(const std::filesystem::path& path,
                   const TensorArchive& archive) {
  write_file_atomic(path, encode_archive(archive));
}

TensorArchive read_archive(const std::filesystem::path& path) {
  try {
    return decode_archive(read_file_bytes(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace skipconv::nn
