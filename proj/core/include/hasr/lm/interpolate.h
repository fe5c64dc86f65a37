// core/include/hasr/lm/interpolate.h

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

#ifndef HASR_LM_INTERPOLATE_H_
#define HASR_LM_INTERPOLATE_H_

#include <vector>

#include "hasr/lm/ngram_model.h"

namespace hasr::lm {

struct EmOptions {
  double tolerance = 1e-7;  // on the mean per-token log-likelihood
  int max_iterations = 200;
};

struct EmResult {
  std::vector<double> weights;
  std::vector<double> log_likelihood;  // mean per token; entry 0 is the uniform start
  int iterations = 0;
};

// EM over mixture weights on held-out text (tokens plus </s>). Components
// must share a vocabulary. Throws DataError when some held-out token has
// zero probability under every component.
EmResult InterpolateEm(const std::vector<const LanguageModel*>& components, const Corpus& heldout,
                       const EmOptions& options = {});

// p(w|h) = sum_i lambda_i p_i(w|h), evaluated on the fly.
class MixtureModel : public LanguageModel {
 public:
  MixtureModel(std::vector<const LanguageModel*> components, std::vector<double> weights);
  const Vocabulary& vocab() const override { return components_.front()->vocab(); }
  double LogProb(std::span<const WordId> history, WordId word) const override;

 private:
  std::vector<const LanguageModel*> components_;
  std::vector<double> weights_;
};

// Static merge: the union of the components' explicit n-grams, each with
// probability sum_i lambda_i p_i(w|h); backoff weights are then recomputed.
NgramModel MergeInterpolated(const std::vector<const NgramModel*>& components, const std::vector<double>& weights);

void ValidateWeights(const std::vector<double>& weights, std::size_t count);

}  // namespace hasr::lm

#endif  // HASR_LM_INTERPOLATE_H_
