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

#include "skipconv/metrics/quality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "skipconv/dsp/fft.hpp"
#include "skipconv/error.hpp"
#include "skipconv/metrics/lpc.hpp"

namespace skipconv::metrics {
namespace {

struct Framing {
  std::size_t len = 0;
  std::size_t hop = 0;
  std::size_t count = 0;
  std::vector<double> window;
  std::vector<bool> active;  // passes the silence gate
};

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
  }
  return w;
}

Framing frame_pair(const AudioBuffer& reference, const AudioBuffer& test,
                   const MetricConfig& cfg, const char* what) {
  dsp::validate(reference);
  dsp::validate(test);
  dsp::require_same_rate(reference, test);
  if (!(cfg.frame_ms > 0.0) || !(cfg.hop_ms > 0.0) || cfg.lpc_order == 0) {
    throw ConfigError(std::string(what) + ": invalid frame settings");
  }
  Framing f;
  f.len = static_cast<std::size_t>(std::lround(cfg.frame_ms * 1e-3 * reference.sample_rate));
  f.hop = static_cast<std::size_t>(std::lround(cfg.hop_ms * 1e-3 * reference.sample_rate));
  const std::size_t n = std::min(reference.size(), test.size());
  if (f.len < 2 || f.hop == 0 || n < f.len) {
    throw DataError(std::string(what) + ": signals shorter than one " +
                    std::to_string(f.len) + "-sample frame");
  }
  f.count = 1 + (n - f.len) / f.hop;
  f.window = hamming(f.len);

  std::vector<double> energy(f.count, 0.0);
  for (std::size_t t = 0; t < f.count; ++t) {
    for (std::size_t i = 0; i < f.len; ++i) {
      const double s = reference.samples[t * f.hop + i];
      energy[t] += s * s;
    }
  }
  const double loudest = *std::max_element(energy.begin(), energy.end());
  if (!(loudest > 0.0)) {
    throw DataError(std::string(what) + ": reference signal is silent");
  }
  const double gate = loudest * std::pow(10.0, -cfg.silence_db / 10.0);
  f.active.resize(f.count);
  for (std::size_t t = 0; t < f.count; ++t) f.active[t] = energy[t] > gate;
  return f;
}

std::vector<double> windowed(const AudioBuffer& a, const Framing& f,
                             std::size_t t) {
  std::vector<double> out(f.len);
  for (std::size_t i = 0; i < f.len; ++i) {
    out[i] = a.samples[t * f.hop + i] * f.window[i];
  }
  return out;
}

bool silent(const std::vector<double>& frame) {
  return std::all_of(frame.begin(), frame.end(), [](double v) { return v == 0.0; });
}

double mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double inverse_mel(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

MetricValue cepstral_distance(const AudioBuffer& reference,
                              const AudioBuffer& test, const MetricConfig& cfg) {
  const Framing f = frame_pair(reference, test, cfg, "cepstral_distance");
  const double scale = 10.0 / std::log(10.0);
  MetricValue out;
  double sum = 0.0;
  for (std::size_t t = 0; t < f.count; ++t) {
    if (!f.active[t]) continue;
    const auto ref_frame = windowed(reference, f, t);
    const auto test_frame = windowed(test, f, t);
    double d = cfg.cd_max;
    if (!silent(test_frame)) {
      const auto c_ref = lpc_cepstrum(lpc(ref_frame, cfg.lpc_order).a, cfg.lpc_order);
      const auto c_test = lpc_cepstrum(lpc(test_frame, cfg.lpc_order).a, cfg.lpc_order);
      double sq = 0.0;
      for (std::size_t k = 0; k < c_ref.size(); ++k) {
        sq += (c_ref[k] - c_test[k]) * (c_ref[k] - c_test[k]);
      }
      d = std::clamp(scale * std::sqrt(2.0 * sq), 0.0, cfg.cd_max);
    }
    sum += d;
    ++out.frames;
  }
  out.value = sum / static_cast<double>(out.frames);
  return out;
}

MetricValue log_likelihood_ratio(const AudioBuffer& reference,
                                 const AudioBuffer& test,
                                 const MetricConfig& cfg) {
  const Framing f = frame_pair(reference, test, cfg, "log_likelihood_ratio");
  std::vector<double> values;
  for (std::size_t t = 0; t < f.count; ++t) {
    if (!f.active[t]) continue;
    const auto ref_frame = windowed(reference, f, t);
    const auto test_frame = windowed(test, f, t);
    double v = cfg.llr_max;
    if (!silent(test_frame)) {
      const auto r_ref = autocorrelation(ref_frame, cfg.lpc_order);
      const auto a_ref = levinson_durbin(r_ref, cfg.lpc_order).a;
      const auto a_test = lpc(test_frame, cfg.lpc_order).a;
      const double num = toeplitz_quadratic_form(a_test, r_ref);
      const double den = toeplitz_quadratic_form(a_ref, r_ref);
      v = std::clamp(std::log(num / den), 0.0, cfg.llr_max);
    }
    values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  const std::size_t keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::round(cfg.llr_keep * values.size())));
  MetricValue out;
  out.frames = keep;
  double sum = 0.0;
  for (std::size_t i = 0; i < keep; ++i) sum += values[i];
  out.value = sum / static_cast<double>(keep);
  return out;
}

std::vector<std::vector<double>> mel_filterbank(std::size_t bands,
                                                std::size_t fft_len,
                                                int sample_rate) {
  const std::size_t bins = fft_len / 2 + 1;
  const double top = mel(0.5 * sample_rate);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = inverse_mel(top * static_cast<double>(i) / (bands + 1));
  }
  std::vector<std::vector<double>> bank(bands, std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = static_cast<double>(k) * sample_rate / fft_len;
      if (hz > lo && hz < mid) {
        bank[b][k] = (hz - lo) / (mid - lo);
      } else if (hz >= mid && hz < hi) {
        bank[b][k] = (hi - hz) / (hi - mid);
      }
    }
  }
  return bank;
}

MetricValue fwsegsnr(const AudioBuffer& reference, const AudioBuffer& test,
                     const MetricConfig& cfg) {
  const Framing f = frame_pair(reference, test, cfg, "fwsegsnr");
  if (cfg.bands == 0) throw ConfigError("fwsegsnr: need at least one band");
  std::size_t fft_len = 1;
  while (fft_len < f.len) fft_len *= 2;
  const auto bank = mel_filterbank(cfg.bands, fft_len, reference.sample_rate);

  auto band_magnitudes = [&](const std::vector<double>& frame) {
    const auto spec = dsp::rfft(frame, fft_len);
    std::vector<double> out(cfg.bands, 0.0);
    for (std::size_t b = 0; b < cfg.bands; ++b) {
      for (std::size_t k = 0; k < spec.size(); ++k) {
        if (bank[b][k] != 0.0) out[b] += bank[b][k] * std::abs(spec[k]);
      }
    }
    return out;
  };

  MetricValue out;
  double sum = 0.0;
  for (std::size_t t = 0; t < f.count; ++t) {
    if (!f.active[t]) continue;
    const auto ref_bands = band_magnitudes(windowed(reference, f, t));
    const auto test_bands = band_magnitudes(windowed(test, f, t));
    double num = 0.0, den = 0.0;
    for (std::size_t b = 0; b < cfg.bands; ++b) {
      const double diff = ref_bands[b] - test_bands[b];
      double snr = cfg.snr_max;
      if (diff != 0.0) {
        snr = ref_bands[b] > 0.0
                  ? 10.0 * std::log10(ref_bands[b] * ref_bands[b] / (diff * diff))
                  : cfg.snr_min;
      }
      snr = std::clamp(snr, cfg.snr_min, cfg.snr_max);
      const double w = std::pow(ref_bands[b], cfg.band_gamma);
      num += w * snr;
      den += w;
    }
    sum += den > 0.0 ? num / den : cfg.snr_min;
    ++out.frames;
  }
  out.value = sum / static_cast<double>(out.frames);
  return out;
}

MetricReport evaluate(const AudioBuffer& reference, const AudioBuffer& test,
                      const MetricConfig& cfg) {
  MetricReport r;
  const MetricValue cd = cepstral_distance(reference, test, cfg);
  const MetricValue llr = log_likelihood_ratio(reference, test, cfg);
  const MetricValue fw = fwsegsnr(reference, test, cfg);
  r.cd = cd.value;
  r.cd_frames = cd.frames;
  r.llr = llr.value;
  r.llr_frames = llr.frames;
  r.fwsegsnr = fw.value;
  r.fwsegsnr_frames = fw.frames;
  return r;
}

}  // namespace skipconv::metrics
