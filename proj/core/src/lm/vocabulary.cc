// core/src/lm/vocabulary.cc

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

#include "hasr/lm/vocabulary.h"

#include <fstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::lm {

Vocabulary::Vocabulary() {
  Add(kBosWord);
  Add(kEosWord);
  Add(kUnkWord);
}

Vocabulary Vocabulary::FromCorpus(const Corpus& corpus) {
  Vocabulary v;
  for (const auto& s : corpus)
    for (const auto& w : s) v.Add(w);
  return v;
}

Vocabulary Vocabulary::FromWords(const std::vector<std::string>& words) {
  Vocabulary v;
  for (const auto& w : words) v.Add(w);
  return v;
}

WordId Vocabulary::Add(const std::string& word) {
  if (word.empty()) throw ConfigError("vocabulary words must be non-empty");
  const auto [it, inserted] = index_.emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<WordId> Vocabulary::Find(const std::string& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId Vocabulary::Lookup(const std::string& word) const { return Find(word).value_or(kUnk); }

Corpus ReadCorpus(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open corpus '" + path + "'");
  Corpus out;
  std::string line;
  while (std::getline(is, line)) {
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

void WriteCorpus(const std::string& path, const Corpus& corpus) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace hasr::lm
