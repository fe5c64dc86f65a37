// core/src/features/feature_matrix.cc

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

#include "hasr/features/feature_matrix.h"

#include "hasr/common/errors.h"

namespace hasr::features {

const char* FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kRaw: return "raw";
    case FeatureKind::kLogmel: return "logmel";
    case FeatureKind::kLogmelDeltas: return "logmel+deltas";
    case FeatureKind::kSpliced: return "spliced";
    case FeatureKind::kNormalized: return "normalized";
    case FeatureKind::kLda: return "lda";
  }
  return "unknown";
}

void Waveform::Validate() const {
  if (sample_rate <= 0) throw ConfigError("waveform sample rate must be positive");
  if (samples.empty()) throw DataError("waveform is empty");
}

}  // namespace hasr::features
