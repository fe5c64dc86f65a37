// core/include/hasr/features/lda.h

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

#ifndef HASR_FEATURES_LDA_H_
#define HASR_FEATURES_LDA_H_

#include <vector>

#include "hasr/common/types.h"
#include "hasr/features/feature_matrix.h"

namespace hasr::features {

struct LdaTransform {
  Matrix projection;   // target_dim × source_dim
  Vector eigenvalues;  // non-increasing
  int num_classes = 0;

  FeatureMatrix Apply(const FeatureMatrix& frames) const;
};

struct ScatterMatrices {
  Matrix within;   // regularized: + 1e-6 * trace / dim on the diagonal
  Matrix between;
  int num_classes = 0;
};

ScatterMatrices ComputeScatter(const Matrix& frames, const std::vector<int>& labels);

// Rows are the leading generalized eigenvectors of (between, within),
// normalized to unit length under the within-class metric and signed so
// that each row's largest-magnitude entry is positive.
LdaTransform EstimateLda(const Matrix& frames, const std::vector<int>& labels, int target_dim = 40);

}  // namespace hasr::features

#endif  // HASR_FEATURES_LDA_H_
