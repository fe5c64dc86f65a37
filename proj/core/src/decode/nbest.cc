// core/src/decode/nbest.cc

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

#include "hasr/decode/nbest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/decode/viterbi.h"

namespace hasr::decode {

void WriteNBest(std::ostream& os, const std::vector<NBestList>& lists) {
  for (const auto& list : lists) {
    for (std::size_t r = 0; r < list.entries.size(); ++r) {
      const auto& e = list.entries[r];
      os << list.utt_id << ' ' << r + 1 << ' ' << FormatDouble(e.am_score) << ' ' << FormatDouble(e.lm_score) << ' '
         << e.words.size();
      for (const auto& w : e.words) os << ' ' << w;
      os << '\n';
    }
  }
}

std::vector<NBestList> ReadNBest(std::istream& is, const std::string& origin) {
  std::vector<NBestList> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tok = SplitWhitespace(line);
    if (tok.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    long long rank = 0, n = 0;
    NBestEntry e;
    if (tok.size() < 5 || !ParseInt(tok[1], &rank) || !ParseDouble(tok[2], &e.am_score) ||
        !ParseDouble(tok[3], &e.lm_score) || !ParseInt(tok[4], &n) || n < 0) {
      throw ParseError(where + "expected 'utt_id rank am_score lm_score num_words w1 ... wn'");
    }
    if (static_cast<long long>(tok.size()) != 5 + n) {
      throw ParseError(where + "declares " + std::to_string(n) + " words but lists " + std::to_string(tok.size() - 5));
    }
    if (!std::isfinite(e.am_score) || !std::isfinite(e.lm_score)) throw ParseError(where + "non-finite score");
    e.words.assign(tok.begin() + 5, tok.end());
    if (out.empty() || out.back().utt_id != tok[0]) {
      if (!seen.insert(tok[0]).second) throw ParseError(where + "entries of '" + tok[0] + "' are not contiguous");
      out.push_back({tok[0], {}});
    }
    NBestList& list = out.back();
    if (rank != static_cast<long long>(list.entries.size()) + 1) {
      throw ParseError(where + "expected rank " + std::to_string(list.entries.size() + 1) + ", found " +
                       std::to_string(rank));
    }
    list.entries.push_back(std::move(e));
  }
  return out;
}

void WriteNBestFile(const std::string& path, const std::vector<NBestList>& lists) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  WriteNBest(os, lists);
  if (!os) throw IoError("failed writing '" + path + "'");
}

std::vector<NBestList> ReadNBestFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return ReadNBest(is, path);
}

NBestList GenerateNBest(const std::string& utt_id, const Matrix& scores, const HmmTopology& topology, int n,
                        int max_edits) {
  if (n < 1) throw ConfigError("N-best size must be >= 1");
  if (max_edits < 0) throw ConfigError("edit radius must be >= 0");
  const int V = topology.num_words();
  const DecodeResult best = ViterbiDecode(scores, topology);

  std::vector<std::vector<int>> order{best.words};
  std::set<std::vector<int>> seen{best.words};
  std::vector<std::vector<int>> frontier{best.words};
  for (int radius = 0; radius < max_edits && topology.loop(); ++radius) {
    std::vector<std::vector<int>> next;
    auto add = [&](std::vector<int> cand) {
      if (cand.empty() || !seen.insert(cand).second) return;
      order.push_back(cand);
      next.push_back(std::move(cand));
    };
    for (const auto& base : frontier) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        for (int v = 0; v < V; ++v) {
          if (v == base[i]) continue;
          auto c = base;
          c[i] = v;
          add(std::move(c));
        }
        auto del = base;
        del.erase(del.begin() + static_cast<std::ptrdiff_t>(i));
        add(std::move(del));
      }
      for (std::size_t i = 0; i <= base.size(); ++i) {
        for (int v = 0; v < V; ++v) {
          auto c = base;
          c.insert(c.begin() + static_cast<std::ptrdiff_t>(i), v);
          add(std::move(c));
        }
      }
    }
    frontier = std::move(next);
  }

  struct Scored {
    std::vector<int> words;
    double am;
  };
  std::vector<Scored> scored;
  for (auto& words : order) {
    try {
      const double am = ForcedAlign(scores, topology, words).score;
      scored.push_back({std::move(words), am});
    } catch (const DecodeError&) {
      // Too many states for the available frames.
    }
  }
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) { return a.am > b.am; });
  if (static_cast<int>(scored.size()) > n) scored.resize(n);
  NBestList list{utt_id, {}};
  for (const auto& s : scored) list.entries.push_back({WordNames(topology, s.words), s.am, 0.0});
  return list;
}

}  // namespace hasr::decode
