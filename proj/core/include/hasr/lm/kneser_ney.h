// core/include/hasr/lm/kneser_ney.h

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

#ifndef HASR_LM_KNESER_NEY_H_
#define HASR_LM_KNESER_NEY_H_

#include "hasr/lm/counts.h"
#include "hasr/lm/ngram_model.h"

namespace hasr::lm {

// Interpolated modified Kneser-Ney. Lower orders use continuation counts
// (distinct left neighbours), except n-grams that start with <s>, which
// keep their raw counts. Discounts per order come from the count-of-counts
// of the counts used at that order:
//   Y = n1 / (n1 + 2 n2), D1 = 1 - 2Y n2/n1, D2 = 2 - 3Y n3/n2, D3+ = 3 - 4Y n4/n3
// falling back to D = 0.75 (flagged) when some n_r is zero or a discount
// leaves (0, r]. The unigram level interpolates with the uniform
// distribution over the vocabulary without <s>. The result is stored in
// backoff form.
NgramModel EstimateKneserNey(const CountTable& counts);

Discounts ModifiedKnDiscounts(const std::array<long, 5>& count_of_counts);

}  // namespace hasr::lm

#endif  // HASR_LM_KNESER_NEY_H_
