// core/src/lm/counts.cc

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

#include "hasr/lm/counts.h"

#include <fstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::lm {

std::array<long, 5> CountTable::CountOfCounts(int k) const {
  std::array<long, 5> n{};
  for (const auto& [gram, c] : counts.at(k)) {
    if (c >= 1 && c <= 4) ++n[c];
  }
  return n;
}

long CountTable::Count(const Ngram& gram) const {
  if (gram.empty() || static_cast<int>(gram.size()) > order) return 0;
  const auto& table = counts[gram.size()];
  const auto it = table.find(gram);
  return it == table.end() ? 0 : it->second;
}

CountTable CountNgrams(const Corpus& corpus, int order, const Vocabulary& vocab) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (corpus.empty()) throw DataError("cannot count n-grams of an empty corpus");
  CountTable table;
  table.order = order;
  table.vocab = vocab;
  table.counts.resize(order + 1);
  Ngram padded;
  for (const auto& sentence : corpus) {
    padded.assign(1, Vocabulary::kBos);
    for (const auto& w : sentence) padded.push_back(vocab.Lookup(w));
    padded.push_back(Vocabulary::kEos);
    for (int k = 1; k <= order; ++k) {
      for (std::size_t i = 0; i + k <= padded.size(); ++i) {
        if (k == 1 && i == 0) continue;  // unigram <s>
        ++table.counts[k][Ngram(padded.begin() + i, padded.begin() + i + k)];
      }
    }
  }
  return table;
}

CountTable CountNgrams(const Corpus& corpus, int order) {
  return CountNgrams(corpus, order, Vocabulary::FromCorpus(corpus));
}

void WriteCounts(const std::string& path, const CountTable& counts) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << "order " << counts.order << "\nvocab";
  for (const auto& w : counts.vocab.words()) os << ' ' << w;
  os << '\n';
  for (int k = 1; k <= counts.order; ++k) {
    for (const auto& [gram, c] : counts.counts[k]) {
      for (std::size_t i = 0; i < gram.size(); ++i) os << (i ? " " : "") << counts.vocab.Word(gram[i]);
      os << '\t' << c << '\n';
    }
  }
  if (!os) throw IoError("failed writing '" + path + "'");
}

CountTable ReadCounts(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open counts '" + path + "'");
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) { throw ParseError(path + ":" + std::to_string(lineno) + ": " + what); };
  CountTable table;
  long long order = 0;
  ++lineno;
  if (!std::getline(is, line)) fail("missing 'order' line");
  auto tok = SplitWhitespace(line);
  if (tok.size() != 2 || tok[0] != "order" || !ParseInt(tok[1], &order) || order < 1) fail("expected 'order N'");
  ++lineno;
  if (!std::getline(is, line)) fail("missing 'vocab' line");
  tok = SplitWhitespace(line);
  if (tok.empty() || tok[0] != "vocab") fail("expected 'vocab w1 w2 ...'");
  table.vocab = Vocabulary::FromWords(std::vector<std::string>(tok.begin() + 1, tok.end()));
  table.order = static_cast<int>(order);
  table.counts.resize(order + 1);
  while (std::getline(is, line)) {
    ++lineno;
    tok = SplitWhitespace(line);
    if (tok.empty()) continue;
    long long c = 0;
    if (tok.size() < 2 || !ParseInt(tok.back(), &c) || c < 1) fail("expected 'w1 ... wk<TAB>count'");
    if (static_cast<long long>(tok.size()) - 1 > order) fail("n-gram longer than the declared order");
    Ngram gram;
    for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
      const auto id = table.vocab.Find(tok[i]);
      if (!id) fail("word '" + tok[i] + "' not in the vocab line");
      gram.push_back(*id);
    }
    table.counts[gram.size()][gram] = c;
  }
  return table;
}

}  // namespace hasr::lm
