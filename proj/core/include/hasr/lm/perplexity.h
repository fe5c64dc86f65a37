// core/include/hasr/lm/perplexity.h

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

#ifndef HASR_LM_PERPLEXITY_H_
#define HASR_LM_PERPLEXITY_H_

#include "hasr/lm/ngram_model.h"

namespace hasr::lm {

enum class OovPolicy { kScoreUnk, kSkip };

struct PerplexityResult {
  double perplexity = 0.0;
  double log10_prob = 0.0;
  long scored_tokens = 0;
  long oov_tokens = 0;
  long sentences = 0;
};

// Scores every word and one </s> per sentence; <s> is context only.
// Out-of-vocabulary words map to <unk> and are either scored (kScoreUnk)
// or excluded from the totals while remaining in the history (kSkip).
PerplexityResult Perplexity(const LanguageModel& model, const Corpus& text, OovPolicy policy = OovPolicy::kScoreUnk);

}  // namespace hasr::lm

#endif  // HASR_LM_PERPLEXITY_H_
