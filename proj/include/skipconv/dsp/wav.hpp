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

#include "skipconv/dsp/audio.hpp"

namespace skipconv::dsp {

enum class WavFormat { kPcm16, kFloat32 };

// Mono RIFF/WAVE, 16-bit PCM or 32-bit IEEE float. Multi-channel or other
// encodings raise DataError.
AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio,
                                     WavFormat format);

AudioBuffer read_wav(const std::filesystem::path& path);
// PCM16 output saturates at full scale.
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavFormat format = WavFormat::kFloat32);

}  // namespace skipconv::dsp
