// core/src/lm/interpolate.cc

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

#include "hasr/lm/interpolate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hasr/common/errors.h"

namespace hasr::lm {
namespace {

void CheckSharedVocab(const std::vector<const LanguageModel*>& components) {
  for (const LanguageModel* m : components) {
    if (m == nullptr) throw ConfigError("null language model component");
    if (!(m->vocab() == components.front()->vocab())) {
      throw ConfigError("interpolated components must share one vocabulary");
    }
  }
}

}  // namespace

void ValidateWeights(const std::vector<double>& weights, std::size_t count) {
  if (weights.size() != count) {
    throw ConfigError("expected " + std::to_string(count) + " interpolation weights, got " +
                      std::to_string(weights.size()));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("interpolation weights must be finite and >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("interpolation weights must sum to 1");
}

EmResult InterpolateEm(const std::vector<const LanguageModel*>& components, const Corpus& heldout,
                       const EmOptions& options) {
  if (components.size() < 2) throw ConfigError("interpolation needs at least two components");
  CheckSharedVocab(components);
  if (heldout.empty()) throw DataError("interpolation needs non-empty held-out text");
  const std::size_t m = components.size();

  // probs[t * m + i] = p_i(token t | history)
  std::vector<double> probs;
  for (const auto& sentence : heldout) {
    std::vector<std::vector<double>> per_model;
    for (const LanguageModel* c : components) per_model.push_back(SentenceLogProbs(*c, sentence));
    for (std::size_t t = 0; t < per_model.front().size(); ++t) {
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        const double p = std::exp(per_model[i][t]);
        any = any || p > 0;
        probs.push_back(p);
      }
      if (!any) throw DataError("a held-out token has zero probability under every component");
    }
  }
  const std::size_t tokens = probs.size() / m;

  EmResult out;
  out.weights.assign(m, 1.0 / static_cast<double>(m));
  auto mean_log_lik = [&](const std::vector<double>& w) {
    double ll = 0.0;
    for (std::size_t t = 0; t < tokens; ++t) {
      double mix = 0.0;
      for (std::size_t i = 0; i < m; ++i) mix += w[i] * probs[t * m + i];
      ll += std::log(mix);
    }
    return ll / static_cast<double>(tokens);
  };
  out.log_likelihood.push_back(mean_log_lik(out.weights));
  std::vector<double> acc(m);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t t = 0; t < tokens; ++t) {
      double mix = 0.0;
      for (std::size_t i = 0; i < m; ++i) mix += out.weights[i] * probs[t * m + i];
      for (std::size_t i = 0; i < m; ++i) acc[i] += out.weights[i] * probs[t * m + i] / mix;
    }
    for (std::size_t i = 0; i < m; ++i) out.weights[i] = acc[i] / static_cast<double>(tokens);
    const double ll = mean_log_lik(out.weights);
    const double gain = ll - out.log_likelihood.back();
    out.log_likelihood.push_back(ll);
    out.iterations = iter + 1;
    if (gain < options.tolerance) break;
  }
  return out;
}

MixtureModel::MixtureModel(std::vector<const LanguageModel*> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty()) throw ConfigError("mixture needs at least one component");
  CheckSharedVocab(components_);
  ValidateWeights(weights_, components_.size());
}

double MixtureModel::LogProb(std::span<const WordId> history, WordId word) const {
  double p = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (weights_[i] > 0) p += weights_[i] * std::exp(components_[i]->LogProb(history, word));
  }
  return std::log(p);
}

NgramModel MergeInterpolated(const std::vector<const NgramModel*>& components, const std::vector<double>& weights) {
  if (components.empty()) throw ConfigError("merge needs at least one component");
  std::vector<const LanguageModel*> as_lm(components.begin(), components.end());
  CheckSharedVocab(as_lm);
  ValidateWeights(weights, components.size());
  int order = 0;
  for (const NgramModel* c : components) order = std::max(order, c->order());

  NgramModel merged(order, components.front()->vocab());
  for (int k = 1; k <= order; ++k) {
    std::set<Ngram> keys;
    for (const NgramModel* c : components) {
      if (k > c->order()) continue;
      for (const auto& [gram, e] : c->entries(k)) keys.insert(gram);
    }
    auto& table = merged.entries(k);
    for (const Ngram& gram : keys) {
      const std::span<const WordId> history(gram.begin(), gram.end() - 1);
      double p = 0.0;
      for (std::size_t i = 0; i < components.size(); ++i) {
        if (weights[i] > 0) p += weights[i] * std::exp(components[i]->LogProb(history, gram.back()));
      }
      table.emplace_hint(table.end(), gram, NgramEntry{std::log(p), 0.0});
    }
  }
  merged.RecomputeBackoffs();
  return merged;
}

}  // namespace hasr::lm
