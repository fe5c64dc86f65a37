// core/src/features/logmel.cc

// Copyright 2026 The hybridasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "hasr/features/logmel.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "hasr/common/errors.h"

namespace hasr::features {
namespace {

int NextPowerOfTwo(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

int FrameLength(int sample_rate, const LogmelConfig& config) {
  return static_cast<int>(std::lround(sample_rate * config.frame_ms / 1000.0));
}

int FrameShift(int sample_rate, const LogmelConfig& config) {
  return static_cast<int>(std::lround(sample_rate * config.shift_ms / 1000.0));
}

int NumFrames(std::size_t num_samples, int sample_rate, const LogmelConfig& config) {
  const int len = FrameLength(sample_rate, config);
  const int shift = FrameShift(sample_rate, config);
  if (len <= 0 || shift <= 0) throw ConfigError("frame length and shift must be positive");
  if (num_samples < static_cast<std::size_t>(len)) return 0;
  return 1 + static_cast<int>((num_samples - len) / shift);
}

double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }
double MelToHz(double mel) { return 700.0 * std::expm1(mel / 1127.0); }

MelFilterbank::MelFilterbank(int num_filters, int fft_size, int sample_rate) {
  if (num_filters <= 0) throw ConfigError("filterbank needs at least one filter");
  if (fft_size <= 0 || sample_rate <= 0) throw ConfigError("invalid FFT size or sample rate");
  const int bins = fft_size / 2 + 1;
  const double top = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(num_filters + 2);
  for (int i = 0; i < num_filters + 2; ++i) edges[i] = MelToHz(top * i / (num_filters + 1));
  centers_hz_.assign(edges.begin() + 1, edges.end() - 1);
  weights_ = Matrix::Zero(num_filters, bins);
  for (int m = 0; m < num_filters; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / fft_size;
      if (f > lo && f < hi) weights_(m, k) = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
    }
  }
}

FeatureMatrix Logmel(const Waveform& wave, const LogmelConfig& config) {
  wave.Validate();
  const int len = FrameLength(wave.sample_rate, config);
  const int shift = FrameShift(wave.sample_rate, config);
  const int frames = NumFrames(wave.samples.size(), wave.sample_rate, config);
  if (frames <= 0) {
    throw DataError("waveform has " + std::to_string(wave.samples.size()) +
                    " samples, fewer than one frame (" + std::to_string(len) + ")");
  }
  if (!(config.energy_floor > 0)) throw ConfigError("energy floor must be positive");
  const int nfft = NextPowerOfTwo(len);
  const MelFilterbank bank(config.num_filters, nfft, wave.sample_rate);

  std::vector<double> window(len);
  for (int i = 0; i < len; ++i) {
    window[i] = len == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (len - 1));
  }

  Eigen::FFT<double> fft;
  std::vector<double> buffer(nfft);
  std::vector<std::complex<double>> spectrum;
  Vector magnitude(bank.num_bins());
  const double log_floor = std::log(config.energy_floor);

  FeatureMatrix out;
  out.kind = FeatureKind::kLogmel;
  out.values.resize(frames, config.num_filters);
  for (int t = 0; t < frames; ++t) {
    std::fill(buffer.begin(), buffer.end(), 0.0);
    const std::size_t start = static_cast<std::size_t>(t) * shift;
    for (int i = 0; i < len; ++i) buffer[i] = window[i] * wave.samples[start + i];
    fft.fwd(spectrum, buffer);
    for (int k = 0; k < magnitude.size(); ++k) magnitude(k) = std::abs(spectrum[k]);
    const Vector energy = bank.weights() * magnitude;
    for (int m = 0; m < config.num_filters; ++m) {
      out.values(t, m) = energy(m) > config.energy_floor ? std::log(energy(m)) : log_floor;
    }
  }
  return out;
}

}  // namespace hasr::features
