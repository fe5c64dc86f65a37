// core/src/lm/perplexity.cc

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

#include "hasr/lm/perplexity.h"

#include <cmath>
#include <numbers>

#include "hasr/common/errors.h"

namespace hasr::lm {

PerplexityResult Perplexity(const LanguageModel& model, const Corpus& text, OovPolicy policy) {
  const Vocabulary& vocab = model.vocab();
  PerplexityResult r;
  double log_sum = 0.0;
  std::vector<WordId> history;
  for (const auto& sentence : text) {
    history.assign(1, Vocabulary::kBos);
    for (const auto& w : sentence) {
      const auto id = vocab.Find(w);
      const WordId wid = id.value_or(Vocabulary::kUnk);
      if (!id || wid == Vocabulary::kUnk) {
        ++r.oov_tokens;
        if (policy == OovPolicy::kSkip) {
          history.push_back(wid);
          continue;
        }
      }
      log_sum += model.LogProb(history, wid);
      ++r.scored_tokens;
      history.push_back(wid);
    }
    log_sum += model.LogProb(history, Vocabulary::kEos);
    ++r.scored_tokens;
    ++r.sentences;
  }
  if (r.scored_tokens == 0) throw DataError("perplexity: no tokens to score");
  r.log10_prob = log_sum / std::numbers::ln10;
  r.perplexity = std::pow(10.0, -r.log10_prob / static_cast<double>(r.scored_tokens));
  return r;
}

}  // namespace hasr::lm
