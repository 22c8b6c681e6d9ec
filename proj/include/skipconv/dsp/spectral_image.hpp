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

#include <cstddef>
#include <vector>

#include "skipconv/dsp/audio.hpp"
#include "skipconv/dsp/psd.hpp"
#include "skipconv/dsp/stft.hpp"

namespace skipconv::dsp {

// Square spectral images: 256 frequency rows (bins 0..255 of the 257
// one-sided bins) by 256 consecutive frames.
inline constexpr std::size_t kImageSize = 256;

// Affine map between dB and the network range: [-80, +20] dB -> [-1, 1].
// Values above +20 dB map above 1 and are not clipped.
struct NormMeta {
  double shift = -30.0;  // centre of the [-80, +20] dB range
  double scale = 50.0;

  double to_network(double db) const { return (db - shift) / scale; }
  double to_db(double value) const { return value * scale + shift; }
};

struct SpectralImage {
  // pixels[f * kImageSize + t], in dB.
  std::vector<double> pixels = std::vector<double>(kImageSize * kImageSize);
  std::size_t source_offset = 0;  // first frame in the source spectrogram
  std::size_t valid_frames = kImageSize;  // trailing frames beyond are padding
  NormMeta norm;

  double& at(std::size_t f, std::size_t t) { return pixels[f * kImageSize + t]; }
  double at(std::size_t f, std::size_t t) const {
    return pixels[f * kImageSize + t];
  }
  std::size_t pad_frames() const { return kImageSize - valid_frames; }
};

// Non-overlapping 256-frame tiles. The last partial tile is padded with the
// spectrogram floor (silence) and records its pad length. Requires at least
// 256 bins; bin 256 and above are dropped.
std::vector<SpectralImage> tile(const LogPowerSpectrogram& lps);

// Exact inverse of tile on the retained 256 bins: tiles must cover frames
// 0..frames-1 contiguously without overlap. Returns a frames x 256 grid.
LogPowerSpectrogram untile(const std::vector<SpectralImage>& images,
                           std::size_t frames, std::size_t bins,
                           double floor_db = kLogPowerFloorDb);

// Phase-reuse synthesis: magnitude sqrt(10^(LPS/10)) combined with the phase
// of `noisy`, then istft. An LPS with one bin fewer than `noisy` gets its top
// bin restored from the noisy magnitude.
AudioBuffer reconstruct(const LogPowerSpectrogram& enhanced,
                        const ComplexSpectrogram& noisy);

}  // namespace skipconv::dsp
