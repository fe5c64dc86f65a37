// core/src/fusion/score_fusion.cc

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

#include "hasr/fusion/score_fusion.h"

#include <cmath>
#include <string>

#include "hasr/common/errors.h"

namespace hasr::fusion {

void ValidateFusionWeights(const std::vector<double>& weights, std::size_t num_members) {
  if (num_members < 2) throw ConfigError("fusion needs at least two members");
  if (weights.size() != num_members) {
    throw ConfigError("got " + std::to_string(weights.size()) + " fusion weights for " +
                      std::to_string(num_members) + " members");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("fusion weights must be positive and finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("fusion weights must sum to 1");
}

std::vector<double> UniformWeights(std::size_t num_members) {
  if (num_members == 0) throw ConfigError("fusion needs at least one member");
  return std::vector<double>(num_members, 1.0 / static_cast<double>(num_members));
}

Matrix ScoreFuse(const std::vector<Matrix>& logits, const std::vector<double>& weights) {
  if (logits.empty() || logits.size() != weights.size()) {
    throw ShapeError("score fusion needs one weight per logit matrix");
  }
  for (const Matrix& m : logits) {
    if (m.rows() != logits[0].rows() || m.cols() != logits[0].cols()) {
      throw ShapeError("score fusion inputs differ in shape: " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + " vs " + std::to_string(logits[0].rows()) + "x" +
                       std::to_string(logits[0].cols()));
    }
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("score fusion weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("score fusion weights must sum to 1");
  Matrix out = weights[0] * logits[0];
  for (std::size_t m = 1; m < logits.size(); ++m) out += weights[m] * logits[m];
  return out;
}

Matrix FuseNetworks(const std::vector<const nn::Network*>& members, const std::vector<Matrix>& inputs,
                    const std::vector<double>& weights) {
  ValidateFusionWeights(weights, members.size());
  if (inputs.size() != members.size()) throw ShapeError("need one input matrix per fused network");
  std::vector<Matrix> logits;
  logits.reserve(members.size());
  for (std::size_t m = 0; m < members.size(); ++m) logits.push_back(members[m]->Logits(inputs[m]));
  return ScoreFuse(logits, weights);
}

}  // namespace hasr::fusion
