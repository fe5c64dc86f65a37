// core/include/hasr/decode/priors.h

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

#ifndef HASR_DECODE_PRIORS_H_
#define HASR_DECODE_PRIORS_H_

#include <string>
#include <vector>

#include "hasr/common/types.h"

namespace hasr::decode {

struct PriorVector {
  Vector p;

  int size() const { return static_cast<int>(p.size()); }
  // Entries strictly positive and summing to one within 1e-9.
  void Validate() const;
};

// p_s = (count_s + alpha) / (total + alpha * K). Throws DataError when the
// alignments contain no frames or a state id >= num_states.
PriorVector EstimatePriors(const std::vector<std::vector<StateId>>& alignments, int num_states,
                           double alpha = 0.5);

// score[t][s] = kappa * (log_post[t][s] - log p_s)
Matrix AcousticScores(const Matrix& log_posteriors, const PriorVector& priors, double kappa = 1.0);

// Text: first line K, then one probability per line.
void WritePriors(const std::string& path, const PriorVector& priors);
PriorVector ReadPriors(const std::string& path);

}  // namespace hasr::decode

#endif  // HASR_DECODE_PRIORS_H_
