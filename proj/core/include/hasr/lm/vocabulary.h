// core/include/hasr/lm/vocabulary.h

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

#ifndef HASR_LM_VOCABULARY_H_
#define HASR_LM_VOCABULARY_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hasr/common/types.h"

namespace hasr::lm {

using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

inline constexpr const char* kBosWord = "<s>";
inline constexpr const char* kEosWord = "</s>";
inline constexpr const char* kUnkWord = "<unk>";

// Closed vocabulary. Ids 0, 1, 2 are always <s>, </s>, <unk>; other words
// follow in insertion order.
class Vocabulary {
 public:
  static constexpr WordId kBos = 0;
  static constexpr WordId kEos = 1;
  static constexpr WordId kUnk = 2;

  Vocabulary();

  // Every distinct token of `corpus`, in order of first occurrence.
  static Vocabulary FromCorpus(const Corpus& corpus);
  static Vocabulary FromWords(const std::vector<std::string>& words);

  WordId Add(const std::string& word);
  std::optional<WordId> Find(const std::string& word) const;
  // Unknown words map to <unk>.
  WordId Lookup(const std::string& word) const;
  const std::string& Word(WordId id) const { return words_.at(id); }
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

  bool operator==(const Vocabulary& other) const { return words_ == other.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

// One sentence per line, whitespace-separated tokens; blank lines skipped.
Corpus ReadCorpus(const std::string& path);
void WriteCorpus(const std::string& path, const Corpus& corpus);

}  // namespace hasr::lm

#endif  // HASR_LM_VOCABULARY_H_
