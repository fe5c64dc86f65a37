// core/include/hasr/features/feature_matrix.h

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

#ifndef HASR_FEATURES_FEATURE_MATRIX_H_
#define HASR_FEATURES_FEATURE_MATRIX_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hasr/common/types.h"

namespace hasr::features {

enum class FeatureKind { kRaw, kLogmel, kLogmelDeltas, kSpliced, kNormalized, kLda };

const char* FeatureKindName(FeatureKind kind);

// T × D frames with a provenance tag.
struct FeatureMatrix {
  Matrix values;
  FeatureKind kind = FeatureKind::kRaw;

  Eigen::Index num_frames() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
};

// 16-bit linear PCM with its sample rate and conversation-side label.
struct Waveform {
  std::vector<std::int16_t> samples;
  int sample_rate = 8000;
  std::string side_id;

  void Validate() const;
};

}  // namespace hasr::features

#endif  // HASR_FEATURES_FEATURE_MATRIX_H_
