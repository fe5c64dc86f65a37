// tests/lm_toys.h

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

#ifndef HASR_TESTS_LM_TOYS_H_
#define HASR_TESTS_LM_TOYS_H_

#include <cmath>
#include <string>
#include <vector>

#include "hasr/common/random.h"
#include "hasr/lm/ngram_model.h"

namespace hasr::testing {

// Sentences over words "v0".."v{V-1}" from a random first-order Markov
// chain, so that the corpus has real bigram structure.
inline lm::Corpus ToyCorpus(Rng& rng, int vocab_size, int sentences, double concentration = 0.5,
                            double end_prob = 0.2) {
  std::vector<std::vector<double>> next(vocab_size + 1);
  for (auto& row : next) row = Dirichlet(rng, vocab_size, concentration);
  lm::Corpus out;
  for (int s = 0; s < sentences; ++s) {
    lm::Sentence sentence;
    int prev = vocab_size;
    do {
      const int w = static_cast<int>(Categorical(rng, next[prev]));
      sentence.push_back("v" + std::to_string(w));
      prev = w;
    } while (Uniform01(rng) > end_prob && sentence.size() < 25);
    out.push_back(std::move(sentence));
  }
  return out;
}

inline std::vector<std::string> ToyWords(int vocab_size) {
  std::vector<std::string> out;
  for (int i = 0; i < vocab_size; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

// Draws sentences from a language model's own distribution.
inline lm::Corpus SampleFromModel(const lm::LanguageModel& model, const std::vector<WordId>& predicted, Rng& rng,
                                  int sentences, int max_len = 40) {
  lm::Corpus out;
  std::vector<double> p(predicted.size());
  for (int s = 0; s < sentences; ++s) {
    std::vector<WordId> history{lm::Vocabulary::kBos};
    lm::Sentence sentence;
    while (static_cast<int>(sentence.size()) < max_len) {
      for (std::size_t i = 0; i < predicted.size(); ++i) p[i] = std::exp(model.LogProb(history, predicted[i]));
      const WordId w = predicted[Categorical(rng, p)];
      if (w == lm::Vocabulary::kEos) break;
      sentence.push_back(model.vocab().Word(w));
      history.push_back(w);
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

}  // namespace hasr::testing

#endif  // HASR_TESTS_LM_TOYS_H_
