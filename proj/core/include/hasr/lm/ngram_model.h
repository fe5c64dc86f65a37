// core/include/hasr/lm/ngram_model.h

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

#ifndef HASR_LM_NGRAM_MODEL_H_
#define HASR_LM_NGRAM_MODEL_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hasr/lm/counts.h"
#include "hasr/lm/vocabulary.h"

namespace hasr::lm {

// Anything that assigns p(word | history). Histories list the most recent
// word last and may begin with <s>.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  virtual const Vocabulary& vocab() const = 0;
  // Natural-log probability.
  virtual double LogProb(std::span<const WordId> history, WordId word) const = 0;
};

struct NgramEntry {
  double log_prob = 0.0;     // natural log
  double log_backoff = 0.0;  // natural log; 0 when the n-gram is not a context
};

struct Discounts {
  double d1 = 0.75, d2 = 0.75, d3 = 0.75;
  bool fallback = false;
};

// Backoff n-gram model. Orders are 1-based: entries(k) holds k-grams.
// Query: the longest explicit suffix n-gram (h', w) gives
// p(w | h) = prod of backoff(h-suffixes longer than h') * p(w | h').
class NgramModel : public LanguageModel {
 public:
  NgramModel() = default;
  NgramModel(int order, Vocabulary vocab);

  int order() const { return order_; }
  const Vocabulary& vocab() const override { return vocab_; }
  double LogProb(std::span<const WordId> history, WordId word) const override;

  std::map<Ngram, NgramEntry>& entries(int k) { return tables_.at(k); }
  const std::map<Ngram, NgramEntry>& entries(int k) const { return tables_.at(k); }
  const NgramEntry* Find(const Ngram& gram) const;
  std::size_t NumEntries(int k) const { return tables_.at(k).size(); }
  std::size_t TotalEntries() const;

  // Words with a unigram entry (all vocabulary words except <s>).
  std::vector<WordId> PredictedWords() const;

  // Recomputes every backoff weight, lowest order first, so that each
  // history normalizes: bo(h) = (1 - sum_E p(w|h)) / (1 - sum_E p(w|h')).
  void RecomputeBackoffs();

  // Largest |sum_w p(w|h) - 1| over the empty history and every context
  // entry (exhaustive over the vocabulary).
  double MaxNormalizationError() const;

  std::vector<Discounts> discounts;  // index k, informational

 private:
  int order_ = 0;
  Vocabulary vocab_;
  std::vector<std::map<Ngram, NgramEntry>> tables_;
};

// Natural-log probabilities of each token of `words` followed by </s>,
// starting from the history <s>.
std::vector<double> SentenceLogProbs(const LanguageModel& model, const Sentence& words);

}  // namespace hasr::lm

#endif  // HASR_LM_NGRAM_MODEL_H_
