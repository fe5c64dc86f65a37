// core/src/lm/prune.cc

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

#include "hasr/lm/prune.h"

#include <cmath>
#include <set>

#include "hasr/common/errors.h"

namespace hasr::lm {

double HistoryProbability(const NgramModel& model, const Ngram& history) {
  double log_p = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i == 0 && history[0] == Vocabulary::kBos) {
      log_p += model.LogProb({}, Vocabulary::kEos);
    } else {
      log_p += model.LogProb(std::span<const WordId>(history.data(), i), history[i]);
    }
  }
  return std::exp(log_p);
}

std::map<Ngram, double> PruningDivergences(const NgramModel& model) {
  std::map<Ngram, double> out;
  for (int k = 2; k <= model.order(); ++k) {
    const auto& table = model.entries(k);
    auto it = table.begin();
    while (it != table.end()) {
      const Ngram history(it->first.begin(), it->first.end() - 1);
      const std::span<const WordId> shorter(history.begin() + 1, history.end());
      auto end = it;
      double explicit_mass = 0.0, lower_mass = 0.0;
      for (; end != table.end() && std::equal(history.begin(), history.end(), end->first.begin()); ++end) {
        explicit_mass += std::exp(end->second.log_prob);
        lower_mass += std::exp(model.LogProb(shorter, end->first.back()));
      }
      const double p_h = HistoryProbability(model, history);
      const double rest = 1.0 - explicit_mass;
      const double rest_lower = 1.0 - lower_mass;
      const double log_bo = std::log(rest) - std::log(rest_lower);
      for (; it != end; ++it) {
        const double p = std::exp(it->second.log_prob);
        const double log_q = model.LogProb(shorter, it->first.back());
        const double log_bo_new = std::log(rest + p) - std::log(rest_lower + std::exp(log_q));
        double d = p * (log_q + log_bo_new - it->second.log_prob);
        if (rest > 0) d += rest * (log_bo_new - log_bo);
        out.emplace(it->first, -p_h * d);
      }
    }
  }
  return out;
}

NgramModel PruneByEntropy(const NgramModel& model, double threshold) {
  if (!(threshold >= 0)) throw ConfigError("pruning threshold must be >= 0");
  const std::map<Ngram, double> divergence = PruningDivergences(model);

  NgramModel pruned(model.order(), model.vocab());
  pruned.discounts = model.discounts;
  pruned.entries(1) = model.entries(1);
  std::set<Ngram> needed_contexts;
  bool dropped = false;
  for (int k = model.order(); k >= 2; --k) {
    std::set<Ngram> next_needed;
    for (const auto& [gram, entry] : model.entries(k)) {
      const bool keep = std::max(divergence.at(gram), 0.0) >= threshold || needed_contexts.count(gram) > 0;
      if (!keep) {
        dropped = true;
        continue;
      }
      pruned.entries(k).emplace(gram, entry);
      next_needed.emplace(gram.begin(), gram.end() - 1);
    }
    needed_contexts = std::move(next_needed);
  }
  if (!dropped) return model;
  pruned.RecomputeBackoffs();
  return pruned;
}

}  // namespace hasr::lm
