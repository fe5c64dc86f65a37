// core/include/hasr/lm/counts.h

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

#ifndef HASR_LM_COUNTS_H_
#define HASR_LM_COUNTS_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hasr/lm/vocabulary.h"

namespace hasr::lm {

using Ngram = std::vector<WordId>;

// Raw n-gram counts of orders 1..order over sentences padded as
// <s> w1 ... wm </s>. The unigram <s> is never counted, so the unigram
// total is the number of words plus one </s> per sentence.
struct CountTable {
  int order = 0;
  Vocabulary vocab;
  std::vector<std::map<Ngram, long>> counts;  // index k holds k-grams; [0] unused

  // n_r for r = 1..4 (index r) over the k-gram counts.
  std::array<long, 5> CountOfCounts(int k) const;
  long Count(const Ngram& gram) const;
};

// Words outside `vocab` are counted as <unk>. Throws DataError on an empty
// corpus, ConfigError on order < 1.
CountTable CountNgrams(const Corpus& corpus, int order, const Vocabulary& vocab);
CountTable CountNgrams(const Corpus& corpus, int order);

// Text: `order N` then `w1 ... wk<TAB>count` lines grouped by order.
void WriteCounts(const std::string& path, const CountTable& counts);
CountTable ReadCounts(const std::string& path);

}  // namespace hasr::lm

#endif  // HASR_LM_COUNTS_H_
