// tests/oracles/kn_oracle.h

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

#ifndef HASR_TESTS_ORACLES_KN_ORACLE_H_
#define HASR_TESTS_ORACLES_KN_ORACLE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace hasr::testing {

// Interpolated modified Kneser-Ney computed directly from sentences with
// string keys and recursion, as a check on the production estimator.
class KnOracle {
 public:
  using Gram = std::vector<std::string>;

  KnOracle(const std::vector<std::vector<std::string>>& sentences, int order, std::set<std::string> vocab)
      : order_(order), raw_(order + 1), adjusted_(order + 1), discounts_(order + 1) {
    vocab.insert("</s>");
    vocab.insert("<unk>");
    vocab.erase("<s>");
    predicted_ = vocab;
    for (const auto& s : sentences) {
      Gram padded{"<s>"};
      for (const auto& w : s) padded.push_back(vocab.count(w) ? w : "<unk>");
      padded.push_back("</s>");
      for (int k = 1; k <= order; ++k) {
        for (std::size_t i = 0; i + k <= padded.size(); ++i) {
          Gram g(padded.begin() + i, padded.begin() + i + k);
          if (k == 1 && g[0] == "<s>") continue;
          raw_[k][g] += 1;
        }
      }
    }
    for (int k = 1; k <= order; ++k) {
      for (const auto& [g, c] : raw_[k]) {
        if (k == order || g[0] == "<s>") {
          adjusted_[k][g] = c;
          continue;
        }
        std::set<std::string> left;
        for (const auto& [h, c2] : raw_[k + 1]) {
          if (Gram(h.begin() + 1, h.end()) == g) left.insert(h[0]);
        }
        adjusted_[k][g] = static_cast<double>(left.size());
      }
      double n[5] = {0, 0, 0, 0, 0};
      for (const auto& [g, c] : adjusted_[k]) {
        if (c >= 1 && c <= 4) n[static_cast<int>(c)] += 1;
      }
      if (n[1] > 0 && n[2] > 0 && n[3] > 0 && n[4] > 0) {
        const double y = n[1] / (n[1] + 2 * n[2]);
        discounts_[k] = {1 - 2 * y * n[2] / n[1], 2 - 3 * y * n[3] / n[2], 3 - 4 * y * n[4] / n[3]};
      } else {
        discounts_[k] = {0.75, 0.75, 0.75};
      }
    }
  }

  // p(w | history); only the last order-1 history words are used.
  double Prob(Gram history, const std::string& w) const {
    if (static_cast<int>(history.size()) > order_ - 1) history.erase(history.begin(), history.end() - (order_ - 1));
    return ProbAt(history, w);
  }

  const std::vector<double>& Discounts(int k) const { return discounts_[k]; }

 private:
  double ProbAt(const Gram& h, const std::string& w) const {
    const int k = static_cast<int>(h.size()) + 1;
    const double lower =
        h.empty() ? 1.0 / static_cast<double>(predicted_.size()) : ProbAt(Gram(h.begin() + 1, h.end()), w);
    double total = 0, mass = 0, own = 0;
    for (const auto& [g, c] : adjusted_[k]) {
      if (Gram(g.begin(), g.end() - 1) != h) continue;
      total += c;
      const double d = discounts_[k][static_cast<int>(std::min(c, 3.0)) - 1];
      mass += d;
      if (g.back() == w) own = c - d;
    }
    if (total == 0) return lower;
    return std::max(own, 0.0) / total + mass / total * lower;
  }

  int order_;
  std::vector<std::map<Gram, double>> raw_, adjusted_;
  std::vector<std::vector<double>> discounts_;
  std::set<std::string> predicted_;
};

}  // namespace hasr::testing

#endif  // HASR_TESTS_ORACLES_KN_ORACLE_H_
