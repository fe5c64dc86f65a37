// core/include/hasr/features/logmel.h

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

#ifndef HASR_FEATURES_LOGMEL_H_
#define HASR_FEATURES_LOGMEL_H_

#include <vector>

#include "hasr/features/feature_matrix.h"

namespace hasr::features {

struct LogmelConfig {
  double frame_ms = 25.0;
  double shift_ms = 10.0;
  int num_filters = 40;
  double energy_floor = 1e-10;
};

int FrameLength(int sample_rate, const LogmelConfig& config);
int FrameShift(int sample_rate, const LogmelConfig& config);

// 1 + floor((num_samples - frame_len) / shift); zero when the signal is
// shorter than one frame.
int NumFrames(std::size_t num_samples, int sample_rate, const LogmelConfig& config);

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters spaced uniformly on the mel scale between 0 Hz and the
// Nyquist frequency, evaluated on the FFT bin frequencies.
class MelFilterbank {
 public:
  MelFilterbank(int num_filters, int fft_size, int sample_rate);

  int num_filters() const { return static_cast<int>(centers_hz_.size()); }
  int num_bins() const { return static_cast<int>(weights_.cols()); }
  const std::vector<double>& centers_hz() const { return centers_hz_; }
  // num_filters × (fft_size / 2 + 1)
  const Matrix& weights() const { return weights_; }

 private:
  std::vector<double> centers_hz_;
  Matrix weights_;
};

// Hamming-windowed magnitude spectrum, mel filterbank, log with floor:
// log(max(energy, energy_floor)). Throws DataError on a waveform shorter
// than one frame.
FeatureMatrix Logmel(const Waveform& wave, const LogmelConfig& config = {});

}  // namespace hasr::features

#endif  // HASR_FEATURES_LOGMEL_H_
