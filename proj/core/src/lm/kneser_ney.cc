// core/src/lm/kneser_ney.cc

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

#include "hasr/lm/kneser_ney.h"

#include <cmath>
#include <limits>

#include "hasr/common/errors.h"

namespace hasr::lm {
namespace {

using AdjustedTable = std::map<Ngram, long>;

double DiscountFor(const Discounts& d, long count) { return count == 1 ? d.d1 : count == 2 ? d.d2 : d.d3; }

std::array<long, 5> CountOfCounts(const AdjustedTable& table) {
  std::array<long, 5> n{};
  for (const auto& [gram, c] : table) {
    if (c >= 1 && c <= 4) ++n[c];
  }
  return n;
}

// Sum, and per-discount-class totals, of the counts sharing one history.
struct HistoryStats {
  double total = 0.0;
  double discount_mass = 0.0;
};

}  // namespace

Discounts ModifiedKnDiscounts(const std::array<long, 5>& n) {
  Discounts d;
  if (n[1] <= 0 || n[2] <= 0 || n[3] <= 0 || n[4] <= 0) {
    d.fallback = true;
    return d;
  }
  const double y = static_cast<double>(n[1]) / static_cast<double>(n[1] + 2 * n[2]);
  const double d1 = 1.0 - 2.0 * y * n[2] / n[1];
  const double d2 = 2.0 - 3.0 * y * n[3] / n[2];
  const double d3 = 3.0 - 4.0 * y * n[4] / n[3];
  if (!(d1 > 0 && d1 <= 1 && d2 > 0 && d2 <= 2 && d3 > 0 && d3 <= 3)) {
    d.fallback = true;
    return d;
  }
  d.d1 = d1;
  d.d2 = d2;
  d.d3 = d3;
  return d;
}

NgramModel EstimateKneserNey(const CountTable& counts) {
  const int n = counts.order;
  if (n < 1 || static_cast<int>(counts.counts.size()) != n + 1) throw ConfigError("malformed count table");
  if (counts.counts[1].empty()) throw DataError("count table has no unigrams");

  std::vector<AdjustedTable> adjusted(n + 1);
  adjusted[n] = counts.counts[n];
  for (int k = n - 1; k >= 1; --k) {
    for (const auto& [gram, c] : counts.counts[k]) {
      if (gram[0] == Vocabulary::kBos) adjusted[k][gram] = c;
    }
    for (const auto& [gram, c] : counts.counts[k + 1]) {
      if (gram[1] == Vocabulary::kBos) continue;
      ++adjusted[k][Ngram(gram.begin() + 1, gram.end())];
    }
  }

  NgramModel model(n, counts.vocab);
  for (int k = 1; k <= n; ++k) model.discounts[k] = ModifiedKnDiscounts(CountOfCounts(adjusted[k]));

  // Unigrams: discounted continuation counts interpolated with uniform.
  {
    const Discounts& d = model.discounts[1];
    HistoryStats stats;
    for (const auto& [gram, c] : adjusted[1]) {
      stats.total += static_cast<double>(c);
      stats.discount_mass += DiscountFor(d, c);
    }
    const int predicted = counts.vocab.size() - 1;
    const double uniform = 1.0 / predicted;
    const double gamma = stats.discount_mass / stats.total;
    auto& table = model.entries(1);
    table[{Vocabulary::kBos}] = {-std::numeric_limits<double>::infinity(), 0.0};
    for (WordId w = 0; w < counts.vocab.size(); ++w) {
      if (w == Vocabulary::kBos) continue;
      const auto it = adjusted[1].find({w});
      const double own = it == adjusted[1].end() ? 0.0 : std::max(it->second - DiscountFor(d, it->second), 0.0);
      table[{w}] = {std::log(own / stats.total + gamma * uniform), 0.0};
    }
  }

  for (int k = 2; k <= n; ++k) {
    const Discounts& d = model.discounts[k];
    auto& table = model.entries(k);
    auto& contexts = model.entries(k - 1);
    auto it = adjusted[k].begin();
    while (it != adjusted[k].end()) {
      const Ngram history(it->first.begin(), it->first.end() - 1);
      auto end = it;
      HistoryStats stats;
      for (; end != adjusted[k].end() && std::equal(history.begin(), history.end(), end->first.begin()); ++end) {
        stats.total += static_cast<double>(end->second);
        stats.discount_mass += DiscountFor(d, end->second);
      }
      const double gamma = stats.discount_mass / stats.total;
      const auto ctx = contexts.find(history);
      if (ctx == contexts.end()) throw LogicError("history without a lower-order entry during estimation");
      ctx->second.log_backoff = std::log(gamma);
      const std::span<const WordId> shorter(history.begin() + 1, history.end());
      for (; it != end; ++it) {
        const double own = std::max(it->second - DiscountFor(d, it->second), 0.0) / stats.total;
        const double lower = std::exp(model.LogProb(shorter, it->first.back()));
        table[it->first] = {std::log(own + gamma * lower), 0.0};
      }
    }
  }
  return model;
}

}  // namespace hasr::lm
