// core/src/nnlm/rescore.cc

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

#include "hasr/nnlm/rescore.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hasr/common/errors.h"
#include "hasr/lm/interpolate.h"

namespace hasr::nnlm {

double LmMixture::SentenceLog10(const std::vector<std::string>& words) const {
  if (components.empty()) throw ConfigError("LM mixture has no components");
  lm::ValidateWeights(weights, components.size());
  std::vector<std::vector<double>> per_model(components.size());
  std::size_t active = 0, only = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (weights[i] <= 0) continue;
    per_model[i] = lm::SentenceLogProbs(*components[i], words);
    ++active;
    only = i;
  }
  double total = 0.0;
  const std::size_t tokens = words.size() + 1;
  for (std::size_t t = 0; t < tokens; ++t) {
    if (active == 1) {
      total += per_model[only][t];
      continue;
    }
    double p = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (weights[i] > 0) p += weights[i] * std::exp(per_model[i][t]);
    }
    total += std::log(p);
  }
  return total / std::numbers::ln10;
}

namespace {

std::vector<double> LmScores(const decode::NBestList& list, const LmMixture& lms) {
  std::vector<double> out;
  for (const auto& e : list.entries) out.push_back(lms.empty() ? e.lm_score : lms.SentenceLog10(e.words));
  return out;
}

RescoredList Rank(const decode::NBestList& list, const std::vector<double>& lm, const RescoreWeights& w) {
  if (list.entries.empty()) throw DataError("N-best list '" + list.utt_id + "' is empty");
  RescoredList out{list.utt_id, {}};
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    const double score = w.am * e.am_score + w.lm * lm[i] + w.wip * static_cast<double>(e.words.size());
    if (!std::isfinite(score)) throw NumericError("non-finite rescoring score in '" + list.utt_id + "'");
    out.ranking.push_back({i, score, lm[i]});
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const RescoredEntry& a, const RescoredEntry& b) { return a.score > b.score; });
  return out;
}

}  // namespace

RescoredList RescoreList(const decode::NBestList& list, const LmMixture& lms, const RescoreWeights& weights) {
  if (!std::isfinite(weights.am) || !std::isfinite(weights.lm) || !std::isfinite(weights.wip)) {
    throw ConfigError("rescoring weights must be finite");
  }
  return Rank(list, LmScores(list, lms), weights);
}

std::vector<RescoredList> RescoreAll(const std::vector<decode::NBestList>& lists, const LmMixture& lms,
                                     const RescoreWeights& weights) {
  std::vector<RescoredList> out;
  out.reserve(lists.size());
  for (const auto& l : lists) out.push_back(RescoreList(l, lms, weights));
  return out;
}

decode::WerReport OneBestWer(const std::vector<decode::NBestList>& lists, const std::vector<RescoredList>& rescored,
                             const std::map<std::string, std::vector<std::string>>& references) {
  decode::WerReport total;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const auto ref = references.find(lists[i].utt_id);
    if (ref == references.end()) throw DataError("no reference for utterance '" + lists[i].utt_id + "'");
    total += decode::Wer(ref->second, lists[i].entries[rescored[i].Best()].words);
  }
  return total;
}

GridResult GridSearchWeights(const std::vector<decode::NBestList>& lists, const LmMixture& lms,
                             const std::map<std::string, std::vector<std::string>>& references,
                             const std::vector<double>& lm_weights, const std::vector<double>& wips) {
  if (lm_weights.empty() || wips.empty()) throw ConfigError("weight grid is empty");
  std::vector<std::vector<double>> lm_cache;
  for (const auto& l : lists) lm_cache.push_back(LmScores(l, lms));
  GridResult best;
  bool have = false;
  for (double wl : lm_weights) {
    for (double wip : wips) {
      const RescoreWeights w{1.0, wl, wip};
      std::vector<RescoredList> ranked;
      for (std::size_t i = 0; i < lists.size(); ++i) ranked.push_back(Rank(lists[i], lm_cache[i], w));
      const decode::WerReport r = OneBestWer(lists, ranked, references);
      if (!have || r.Errors() < best.wer.Errors()) {
        best = {w, r};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace hasr::nnlm
