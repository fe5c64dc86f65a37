// core/include/hasr/lm/prune.h

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

#ifndef HASR_LM_PRUNE_H_
#define HASR_LM_PRUNE_H_

#include <map>

#include "hasr/lm/ngram_model.h"

namespace hasr::lm {

// Relative entropy caused by dropping each n-gram of order >= 2 on its
// own, with the history's backoff weight re-solved:
//   D = -P(h) [ p(w|h) (log(bo'(h) p(w|h')) - log p(w|h))
//             + (1 - sum_E p(v|h)) (log bo'(h) - log bo(h)) ]
// P(h) is the chain-rule probability of h under the model (a leading <s>
// contributes p(</s>), the sentence-start frequency).
std::map<Ngram, double> PruningDivergences(const NgramModel& model);

double HistoryProbability(const NgramModel& model, const Ngram& history);

// Drops n-grams with max(D, 0) < threshold, all decided against the input
// model; n-grams that are the history of a surviving longer n-gram are
// kept. Backoff weights are recomputed. Unigrams are never pruned.
NgramModel PruneByEntropy(const NgramModel& model, double threshold);

}  // namespace hasr::lm

#endif  // HASR_LM_PRUNE_H_
