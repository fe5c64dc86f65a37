// core/include/hasr/nnlm/rescore.h

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

#ifndef HASR_NNLM_RESCORE_H_
#define HASR_NNLM_RESCORE_H_

#include <map>
#include <string>
#include <vector>

#include "hasr/decode/nbest.h"
#include "hasr/decode/wer.h"
#include "hasr/lm/ngram_model.h"

namespace hasr::nnlm {

struct RescoreWeights {
  double am = 1.0;
  double lm = 1.0;
  double wip = 0.0;  // per-word insertion bonus
};

// Linear mixture of language models applied per token, before the log.
// With no components the N-best file's own lm_score column is used.
struct LmMixture {
  std::vector<const lm::LanguageModel*> components;
  std::vector<double> weights;

  bool empty() const { return components.empty(); }
  // log10 prod_t sum_i w_i p_i(token_t | history), including </s>.
  double SentenceLog10(const std::vector<std::string>& words) const;
};

struct RescoredEntry {
  std::size_t original_rank = 0;  // 0-based index into the input list
  double score = 0.0;
  double lm_log10 = 0.0;
};

struct RescoredList {
  std::string utt_id;
  std::vector<RescoredEntry> ranking;  // best first

  std::size_t Best() const { return ranking.front().original_rank; }
};

// score = w_am * am + w_lm * lm + wip * num_words; stable sort descending.
RescoredList RescoreList(const decode::NBestList& list, const LmMixture& lms, const RescoreWeights& weights);

std::vector<RescoredList> RescoreAll(const std::vector<decode::NBestList>& lists, const LmMixture& lms,
                                     const RescoreWeights& weights);

// Corpus-level WER of the 1-best entries. Every list needs a reference.
decode::WerReport OneBestWer(const std::vector<decode::NBestList>& lists, const std::vector<RescoredList>& rescored,
                             const std::map<std::string, std::vector<std::string>>& references);

struct GridResult {
  RescoreWeights weights;
  decode::WerReport wer;
};

// Exhaustive search over w_lm x wip with w_am = 1; ties keep the earliest
// grid point. LM scores are computed once per entry.
GridResult GridSearchWeights(const std::vector<decode::NBestList>& lists, const LmMixture& lms,
                             const std::map<std::string, std::vector<std::string>>& references,
                             const std::vector<double>& lm_weights, const std::vector<double>& wips);

}  // namespace hasr::nnlm

#endif  // HASR_NNLM_RESCORE_H_
