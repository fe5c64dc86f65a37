// core/src/lm/ngram_model.cc

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

#include "hasr/lm/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hasr/common/errors.h"

namespace hasr::lm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool IsPrefix(const Ngram& prefix, const Ngram& gram) {
  return gram.size() == prefix.size() + 1 && std::equal(prefix.begin(), prefix.end(), gram.begin());
}

}  // namespace

NgramModel::NgramModel(int order, Vocabulary vocab)
    : discounts(order + 1), order_(order), vocab_(std::move(vocab)), tables_(order + 1) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
}

const NgramEntry* NgramModel::Find(const Ngram& gram) const {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) return nullptr;
  const auto& table = tables_[gram.size()];
  const auto it = table.find(gram);
  return it == table.end() ? nullptr : &it->second;
}

std::size_t NgramModel::TotalEntries() const {
  std::size_t n = 0;
  for (int k = 1; k <= order_; ++k) n += tables_[k].size();
  return n;
}

double NgramModel::LogProb(std::span<const WordId> history, WordId word) const {
  std::size_t k = std::min<std::size_t>(order_ - 1, history.size());
  double backoff = 0.0;
  Ngram gram;
  for (;; --k) {
    gram.assign(history.end() - k, history.end());
    gram.push_back(word);
    if (const NgramEntry* e = Find(gram)) return backoff + e->log_prob;
    if (k == 0) return kNegInf;
    gram.pop_back();
    if (const NgramEntry* ctx = Find(gram)) backoff += ctx->log_backoff;
  }
}

std::vector<WordId> NgramModel::PredictedWords() const {
  std::vector<WordId> out;
  for (const auto& [gram, e] : tables_[1]) {
    if (gram[0] != Vocabulary::kBos && std::isfinite(e.log_prob)) out.push_back(gram[0]);
  }
  return out;
}

void NgramModel::RecomputeBackoffs() {
  const std::vector<WordId> predicted = PredictedWords();
  for (int k = 1; k < order_; ++k) {
    auto& higher = tables_[k + 1];
    for (auto& [ctx, entry] : tables_[k]) {
      double explicit_mass = 0.0, lower_mass = 0.0;
      std::size_t covered = 0;
      const std::span<const WordId> shorter(ctx.begin() + 1, ctx.end());
      for (auto it = higher.lower_bound(ctx); it != higher.end() && IsPrefix(ctx, it->first); ++it) {
        explicit_mass += std::exp(it->second.log_prob);
        lower_mass += std::exp(LogProb(shorter, it->first.back()));
        ++covered;
      }
      if (covered == 0 || covered >= predicted.size()) {
        entry.log_backoff = 0.0;
        continue;
      }
      const double num = std::max(1.0 - explicit_mass, 1e-300);
      const double den = std::max(1.0 - lower_mass, 1e-300);
      entry.log_backoff = std::log(num) - std::log(den);
    }
  }
  for (auto& [gram, entry] : tables_[order_]) entry.log_backoff = 0.0;
}

double NgramModel::MaxNormalizationError() const {
  const std::vector<WordId> predicted = PredictedWords();
  auto error = [&](std::span<const WordId> h) {
    double sum = 0.0;
    for (WordId w : predicted) sum += std::exp(LogProb(h, w));
    return std::abs(sum - 1.0);
  };
  double worst = error({});
  for (int k = 1; k < order_; ++k) {
    for (const auto& [ctx, entry] : tables_[k]) worst = std::max(worst, error(ctx));
  }
  return worst;
}

std::vector<double> SentenceLogProbs(const LanguageModel& model, const Sentence& words) {
  const Vocabulary& vocab = model.vocab();
  std::vector<WordId> history{Vocabulary::kBos};
  std::vector<double> out;
  out.reserve(words.size() + 1);
  for (const auto& w : words) {
    const WordId id = vocab.Lookup(w);
    out.push_back(model.LogProb(history, id));
    history.push_back(id);
  }
  out.push_back(model.LogProb(history, Vocabulary::kEos));
  return out;
}

}  // namespace hasr::lm
