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

#include "skipconv/dsp/spectral_image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skipconv/error.hpp"

namespace skipconv::dsp {

std::vector<SpectralImage> tile(const LogPowerSpectrogram& lps) {
  const SpectralGrid& grid = lps.values_db;
  if (grid.bins < kImageSize) {
    throw ShapeError("tile: need at least " + std::to_string(kImageSize) +
                     " bins, got " + std::to_string(grid.bins));
  }
  std::vector<SpectralImage> images;
  for (std::size_t start = 0; start < grid.frames; start += kImageSize) {
    SpectralImage img;
    img.source_offset = start;
    img.valid_frames = std::min(kImageSize, grid.frames - start);
    for (std::size_t f = 0; f < kImageSize; ++f) {
      for (std::size_t t = 0; t < kImageSize; ++t) {
        img.at(f, t) =
            t < img.valid_frames ? grid.at(start + t, f) : lps.floor_db;
      }
    }
    images.push_back(std::move(img));
  }
  return images;
}

LogPowerSpectrogram untile(const std::vector<SpectralImage>& images,
                           std::size_t frames, std::size_t bins,
                           double floor_db) {
  if (bins < kImageSize) {
    throw ShapeError("untile: original spectrogram had " +
                     std::to_string(bins) + " bins, fewer than " +
                     std::to_string(kImageSize));
  }
  LogPowerSpectrogram lps{SpectralGrid(frames, kImageSize), floor_db};
  std::vector<bool> covered(frames, false);
  for (const SpectralImage& img : images) {
    if (img.valid_frames > kImageSize ||
        img.source_offset + img.valid_frames > frames) {
      throw ShapeError("untile: tile at frame " +
                       std::to_string(img.source_offset) +
                       " extends past frame count " + std::to_string(frames));
    }
    for (std::size_t t = 0; t < img.valid_frames; ++t) {
      const std::size_t dst = img.source_offset + t;
      if (covered[dst]) {
        throw ShapeError("untile: overlapping tiles at frame " +
                         std::to_string(dst));
      }
      covered[dst] = true;
      for (std::size_t f = 0; f < kImageSize; ++f) {
        lps.values_db.at(dst, f) = img.at(f, t);
      }
    }
  }
  const auto gap = std::find(covered.begin(), covered.end(), false);
  if (gap != covered.end()) {
    throw ShapeError("untile: no tile covers frame " +
                     std::to_string(gap - covered.begin()));
  }
  return lps;
}

AudioBuffer reconstruct(const LogPowerSpectrogram& enhanced,
                        const ComplexSpectrogram& noisy) {
  const SpectralGrid& db = enhanced.values_db;
  if (db.frames != noisy.frames ||
      (db.bins != noisy.bins && db.bins + 1 != noisy.bins)) {
    throw ShapeError("reconstruct: LPS " + std::to_string(db.frames) + "x" +
                     std::to_string(db.bins) + " does not fit spectrogram " +
                     std::to_string(noisy.frames) + "x" +
                     std::to_string(noisy.bins));
  }
  ComplexSpectrogram out = noisy;
  for (std::size_t t = 0; t < noisy.frames; ++t) {
    for (std::size_t f = 0; f < db.bins; ++f) {
      const std::complex<double> x = noisy.at(t, f);
      const double mag = std::sqrt(std::pow(10.0, db.at(t, f) / 10.0));
      const double noisy_mag = std::abs(x);
      out.at(t, f) = noisy_mag > 0.0 ? x * (mag / noisy_mag)
                                     : std::complex<double>(mag, 0.0);
    }
  }
  return istft(out);
}

}  // namespace skipconv::dsp
