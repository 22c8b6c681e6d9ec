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

#include "skipconv/dsp/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const std::uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}
void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back(v >> 8);
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("wav: not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t len = le32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || len > avail) throw DataError("wav: malformed fmt chunk");
      format = le16(chunk + 8);
      channels = le16(chunk + 10);
      rate = le32(chunk + 12);
      bits = le16(chunk + 22);
      if (format == kFormatExtensible && len >= 26) format = le16(chunk + 32);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = std::min(len, avail);
      break;
    }
    pos = body + len + (len & 1);
  }
  if (channels == 0 || data == nullptr) {
    throw DataError("wav: missing fmt or data chunk");
  }
  if (channels != 1) {
    throw DataError("wav: expected mono, got " + std::to_string(channels) +
                    " channels");
  }
  AudioBuffer audio;
  audio.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    audio.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      audio.samples[i] =
          std::max(-1.0, static_cast<std::int16_t>(le16(data + 2 * i)) / 32767.0);
    }
  } else if (format == kFormatFloat && bits == 32) {
    audio.samples.resize(data_len / 4);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      const std::uint32_t raw = le32(data + 4 * i);
      float f;
      std::memcpy(&f, &raw, 4);
      audio.samples[i] = f;
    }
  } else {
    throw DataError("wav: unsupported encoding (format " +
                    std::to_string(format) + ", " + std::to_string(bits) +
                    " bits); expected 16-bit PCM or 32-bit float");
  }
  validate(audio);
  return audio;
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio,
                                     WavFormat format) {
  validate(audio);
  const bool pcm = format == WavFormat::kPcm16;
  const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(audio.samples.size() * bytes_per_sample);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, pcm ? kFormatPcm : kFormatFloat);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put32(out, static_cast<std::uint32_t>(audio.sample_rate) * bytes_per_sample);
  put16(out, bytes_per_sample);
  put16(out, static_cast<std::uint16_t>(8 * bytes_per_sample));
  put_tag(out, "data");
  put32(out, data_len);
  for (double s : audio.samples) {
    if (pcm) {
      const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32767.0);
      put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    } else {
      const float f = static_cast<float>(s);
      std::uint32_t raw;
      std::memcpy(&raw, &f, 4);
      put32(out, raw);
    }
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  try {
    return decode_wav(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavFormat format) {
  const auto bytes = encode_wav(audio, format);
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

}  // namespace skipconv::dsp
