// core/include/hasr/features/transforms.h

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

#ifndef HASR_FEATURES_TRANSFORMS_H_
#define HASR_FEATURES_TRANSFORMS_H_

#include <string>
#include <vector>

#include "hasr/features/feature_matrix.h"
#include "hasr/nn/layer_spec.h"

namespace hasr::features {

// Regression deltas with half-window 2 and edge replication:
//   d_t = sum_{k=1..2} k (x_{t+k} - x_{t-k}) / 10
// Output is [static, delta, delta-delta] (width 3D).
FeatureMatrix AddDeltas(const FeatureMatrix& frames);

// Row t becomes x_{t-k} .. x_{t+k}; out-of-range frames replicate the
// first/last frame.
FeatureMatrix Splice(const FeatureMatrix& frames, int context);

// Per-dimension zero mean / unit variance using statistics of `frames`
// (population variance, floored at 1e-8).
FeatureMatrix Cmvn(const FeatureMatrix& frames);

// Applies CMVN with statistics pooled over all utterances that share a
// side id. `side_ids` runs parallel to `utterances`.
void CmvnBySide(std::vector<FeatureMatrix>* utterances, const std::vector<std::string>& side_ids);

// How per-frame network inputs are assembled from an utterance's frames.
//   splice:k  11-frame style context (2k+1 frames, centered)
//   window:s  forward window x_t .. x_{t+s-1} (unfolded RNN input)
//   cnn:k     [static|delta|delta-delta] frames arranged as a
//             D × (2k+1) × 3 block (frequency × time × stream)
//   none      the frame itself
struct InputTransform {
  enum class Kind { kNone, kSplice, kWindow, kCnn };
  Kind kind = Kind::kNone;
  int context = 0;

  static InputTransform Parse(const std::string& text);
  std::string ToString() const;
  int OutputDim(int frame_dim) const;
  // Geometry of a cnn block built from frames of width `frame_dim` (which
  // must hold three streams).
  nn::Geometry CnnGeometry(int frame_dim) const;
};

Matrix BuildNetworkInput(const Matrix& frames, const InputTransform& transform);

}  // namespace hasr::features

#endif  // HASR_FEATURES_TRANSFORMS_H_
