// core/src/decode/viterbi.cc

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

#include "hasr/decode/viterbi.h"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "hasr/common/errors.h"

namespace hasr::decode {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckScores(const Matrix& scores, int num_states) {
  if (scores.rows() < 1) throw ShapeError("decode: score matrix has no frames");
  if (scores.cols() != num_states) {
    throw ShapeError("decode: scores cover " + std::to_string(scores.cols()) + " states, topology has " +
                     std::to_string(num_states));
  }
  if (!scores.allFinite()) throw NumericError("decode: score matrix has non-finite entries");
}

}  // namespace

DecodeResult ViterbiDecode(const Matrix& scores, const HmmTopology& topo) {
  const int S = topo.num_states();
  CheckScores(scores, S);
  const Eigen::Index T = scores.rows();

  std::vector<double> prev(S, kNegInf), cur(S);
  std::vector<StateId> back(static_cast<std::size_t>(T) * S, -1);
  std::vector<std::uint8_t> boundary(static_cast<std::size_t>(T) * S, 0);

  for (int w = 0; w < topo.num_words(); ++w) {
    const StateId s = topo.FirstState(w);
    prev[s] = topo.LogWordEntry() + scores(0, s);
  }

  for (Eigen::Index t = 1; t < T; ++t) {
    // Best word exit at t-1, shared by every word entry.
    double best_exit = kNegInf;
    StateId exit_state = -1;
    if (topo.loop()) {
      for (int w = 0; w < topo.num_words(); ++w) {
        const StateId last = topo.LastState(w);
        const double v = prev[last] + topo.LogAdvance(last);
        if (v > best_exit) best_exit = v, exit_state = last;
      }
    }
    for (StateId s = 0; s < S; ++s) {
      double best = kNegInf;
      StateId arg = -1;
      bool via_boundary = false;
      auto offer = [&](double v, StateId from, bool is_boundary) {
        if (v > best) best = v, arg = from, via_boundary = is_boundary;
      };
      if (topo.IsFirst(s)) {
        const double entry = best_exit + topo.LogWordEntry();
        // Candidates in predecessor order; self before boundary on equal index.
        if (exit_state >= 0 && exit_state < s) offer(entry, exit_state, true);
        offer(prev[s] + topo.LogSelfLoop(s), s, false);
        if (exit_state >= s) offer(entry, exit_state, true);
      } else {
        offer(prev[s - 1] + topo.LogAdvance(s - 1), s - 1, false);
        offer(prev[s] + topo.LogSelfLoop(s), s, false);
      }
      cur[s] = best + scores(t, s);
      back[t * S + s] = arg;
      boundary[t * S + s] = via_boundary;
    }
    std::swap(prev, cur);
  }

  double best = kNegInf;
  StateId end = -1;
  for (int w = 0; w < topo.num_words(); ++w) {
    const StateId last = topo.LastState(w);
    if (prev[last] > best) best = prev[last], end = last;
  }
  if (end < 0 || best == kNegInf) {
    throw DecodeError("no word-final state is reachable in " + std::to_string(T) + " frames");
  }

  DecodeResult out;
  out.score = best;
  out.states.resize(T);
  std::vector<bool> starts(T, false);
  StateId s = end;
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    out.states[t] = s;
    if (t == 0) {
      starts[0] = true;
      break;
    }
    starts[t] = boundary[t * S + s] != 0;
    s = back[t * S + s];
  }
  for (Eigen::Index t = 0; t < T; ++t) {
    if (starts[t]) out.words.push_back(topo.WordOf(out.states[t]));
  }
  return out;
}

DecodeResult ForcedAlign(const Matrix& scores, const HmmTopology& topo, const std::vector<int>& words) {
  CheckScores(scores, topo.num_states());
  if (words.empty()) throw DecodeError("forced alignment needs at least one word");
  if (words.size() > 1 && !topo.loop()) throw DecodeError("topology without loop admits single-word paths only");
  std::vector<StateId> chain;
  for (int w : words) {
    if (w < 0 || w >= topo.num_words()) throw DecodeError("word index " + std::to_string(w) + " not in topology");
    for (StateId s = topo.FirstState(w); s <= topo.LastState(w); ++s) chain.push_back(s);
  }
  const Eigen::Index T = scores.rows();
  const std::size_t N = chain.size();
  if (static_cast<Eigen::Index>(N) > T) {
    throw DecodeError("word sequence needs " + std::to_string(N) + " frames, only " + std::to_string(T) + " available");
  }
  std::vector<double> prev(N, kNegInf), cur(N);
  std::vector<std::uint8_t> advanced(static_cast<std::size_t>(T) * N, 0);
  prev[0] = scores(0, chain[0]);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (std::size_t i = 0; i < N; ++i) {
      const double stay = prev[i] + topo.LogSelfLoop(chain[i]);
      const double move = i > 0 ? prev[i - 1] + topo.LogAdvance(chain[i - 1]) : kNegInf;
      // Predecessor i-1 has the lower position; it wins ties.
      const bool take_move = move >= stay && move > kNegInf;
      cur[i] = (take_move ? move : stay) + scores(t, chain[i]);
      advanced[t * N + i] = take_move;
    }
    std::swap(prev, cur);
  }
  if (prev[N - 1] == kNegInf) throw DecodeError("forced alignment found no complete path");
  DecodeResult out;
  out.score = prev[N - 1];
  out.words = words;
  out.states.resize(T);
  std::size_t i = N - 1;
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    out.states[t] = chain[i];
    if (t > 0 && advanced[t * N + i]) --i;
  }
  return out;
}

std::vector<std::string> WordNames(const HmmTopology& topology, const std::vector<int>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (int w : words) out.push_back(topology.word(w).name);
  return out;
}

}  // namespace hasr::decode
