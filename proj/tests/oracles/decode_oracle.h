// tests/oracles/decode_oracle.h

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

#ifndef HASR_TESTS_ORACLES_DECODE_ORACLE_H_
#define HASR_TESTS_ORACLES_DECODE_ORACLE_H_

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/decode/topology.h"

namespace hasr::testing {

// Exhaustive enumeration of every legal path through a word-loop graph.
struct BruteForceBest {
  double score = -std::numeric_limits<double>::infinity();
  double runner_up = -std::numeric_limits<double>::infinity();
  std::vector<int> words;
  std::vector<StateId> states;
  long paths = 0;
};

inline void EnumeratePaths(const Matrix& scores, const decode::HmmTopology& topo, Eigen::Index t, StateId s,
                           double acc, std::vector<StateId>& states, std::vector<int>& words, BruteForceBest& best) {
  states.push_back(s);
  if (t + 1 == scores.rows()) {
    if (topo.IsLast(s)) {
      ++best.paths;
      if (acc > best.score) {
        best.runner_up = best.score;
        best.score = acc;
        best.words = words;
        best.states = states;
      } else if (acc > best.runner_up) {
        best.runner_up = acc;
      }
    }
    states.pop_back();
    return;
  }
  const Eigen::Index n = t + 1;
  EnumeratePaths(scores, topo, n, s, acc + topo.LogSelfLoop(s) + scores(n, s), states, words, best);
  if (!topo.IsLast(s)) {
    EnumeratePaths(scores, topo, n, s + 1, acc + topo.LogAdvance(s) + scores(n, s + 1), states, words, best);
  } else if (topo.loop()) {
    for (int w = 0; w < topo.num_words(); ++w) {
      const StateId f = topo.FirstState(w);
      words.push_back(w);
      EnumeratePaths(scores, topo, n, f, acc + topo.LogAdvance(s) + topo.LogWordEntry() + scores(n, f), states, words,
                     best);
      words.pop_back();
    }
  }
  states.pop_back();
}

inline BruteForceBest BruteForceDecode(const Matrix& scores, const decode::HmmTopology& topo) {
  BruteForceBest best;
  std::vector<StateId> states;
  for (int w = 0; w < topo.num_words(); ++w) {
    std::vector<int> words{w};
    const StateId f = topo.FirstState(w);
    EnumeratePaths(scores, topo, 0, f, topo.LogWordEntry() + scores(0, f), states, words, best);
  }
  return best;
}

// Random topology with at most `max_words` words of at most
// `max_states_per_word` states each.
inline decode::HmmTopology RandomTopology(Rng& rng, int max_words, int max_states_per_word) {
  const int V = 1 + static_cast<int>(UniformIndex(rng, max_words));
  std::vector<decode::HmmWord> words;
  for (int w = 0; w < V; ++w) {
    const int n = 1 + static_cast<int>(UniformIndex(rng, max_states_per_word));
    decode::HmmWord word{"w" + std::to_string(w), {}};
    for (int j = 0; j < n; ++j) word.self_loop.push_back(UniformReal(rng, 0.05, 0.95));
    words.push_back(std::move(word));
  }
  return decode::HmmTopology(std::move(words), UniformIndex(rng, 4) != 0);
}

}  // namespace hasr::testing

#endif  // HASR_TESTS_ORACLES_DECODE_ORACLE_H_
