// core/include/hasr/fusion/score_fusion.h

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

#ifndef HASR_FUSION_SCORE_FUSION_H_
#define HASR_FUSION_SCORE_FUSION_H_

#include <vector>

#include "hasr/common/types.h"
#include "hasr/nn/network.h"

namespace hasr::fusion {

// Member weights: at least two, each positive, summing to one (within 1e-9).
void ValidateFusionWeights(const std::vector<double>& weights, std::size_t num_members);
std::vector<double> UniformWeights(std::size_t num_members);

// Weighted element-wise sum of pre-softmax outputs. Zero weights are
// allowed here; weights must be non-negative and sum to one.
Matrix ScoreFuse(const std::vector<Matrix>& logits, const std::vector<double>& weights);

// Fused logits of `members`, member m reading `inputs[m]` (members may use
// different input representations of the same frames).
Matrix FuseNetworks(const std::vector<const nn::Network*>& members, const std::vector<Matrix>& inputs,
                    const std::vector<double>& weights);

}  // namespace hasr::fusion

#endif  // HASR_FUSION_SCORE_FUSION_H_
