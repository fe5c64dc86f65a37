// core/src/decode/topology.cc

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

#include "hasr/decode/topology.h"

#include <cmath>
#include <fstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::decode {

HmmTopology::HmmTopology(std::vector<HmmWord> words, bool loop) : words_(std::move(words)), loop_(loop) {
  if (words_.empty()) throw ConfigError("topology needs at least one word");
  for (int w = 0; w < num_words(); ++w) {
    const HmmWord& word = words_[w];
    if (word.name.empty()) throw ConfigError("topology word " + std::to_string(w) + " has no name");
    if (!index_.emplace(word.name, w).second) throw ConfigError("duplicate topology word '" + word.name + "'");
    if (word.num_states() < 1) throw ConfigError("word '" + word.name + "' has no states");
    offsets_.push_back(static_cast<StateId>(state_word_.size()));
    for (double p : word.self_loop) {
      // p == 1 would trap the path and leave later states unreachable.
      if (!(p >= 0.0 && p < 1.0)) {
        throw ConfigError("word '" + word.name + "': self-loop probability " + FormatDouble(p) + " not in [0, 1)");
      }
      state_word_.push_back(w);
      log_self_.push_back(std::log(p));
      log_advance_.push_back(std::log1p(-p));
    }
  }
  log_entry_ = -std::log(static_cast<double>(words_.size()));
}

HmmTopology HmmTopology::Uniform(const std::vector<std::string>& vocab, int states_per_word, double self_loop,
                                 bool loop) {
  if (states_per_word < 1) throw ConfigError("states per word must be at least 1");
  std::vector<HmmWord> words;
  for (const auto& name : vocab) words.push_back({name, std::vector<double>(states_per_word, self_loop)});
  return HmmTopology(std::move(words), loop);
}

int HmmTopology::FindWord(const std::string& name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

HmmTopology HmmTopology::Parse(std::istream& is, const std::string& origin) {
  std::vector<HmmWord> words;
  bool loop = true;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto tok = SplitWhitespace(line);
    if (tok.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (tok[0] == "loop") {
      if (tok.size() != 2 || (tok[1] != "true" && tok[1] != "false")) throw ParseError(where + "expected 'loop true|false'");
      loop = tok[1] == "true";
    } else if (tok[0] == "word") {
      long long n = 0;
      if (tok.size() < 3 || !ParseInt(tok[2], &n) || n < 1) {
        throw ParseError(where + "expected 'word <name> <num_states> <self_loop...>'");
      }
      if (static_cast<long long>(tok.size()) != 3 + n) {
        throw ParseError(where + "word '" + tok[1] + "' declares " + std::to_string(n) + " states but lists " +
                         std::to_string(tok.size() - 3) + " self-loop probabilities");
      }
      HmmWord word{tok[1], {}};
      for (std::size_t i = 3; i < tok.size(); ++i) {
        double p = 0;
        if (!ParseDouble(tok[i], &p)) throw ParseError(where + "bad probability '" + tok[i] + "'");
        word.self_loop.push_back(p);
      }
      words.push_back(std::move(word));
    } else {
      throw ParseError(where + "unknown directive '" + tok[0] + "'");
    }
  }
  try {
    return HmmTopology(std::move(words), loop);
  } catch (const ConfigError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

HmmTopology HmmTopology::FromFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open topology '" + path + "'");
  return Parse(is, path);
}

void HmmTopology::Write(std::ostream& os) const {
  os << "loop " << (loop_ ? "true" : "false") << '\n';
  for (const auto& w : words_) {
    os << "word " << w.name << ' ' << w.num_states();
    for (double p : w.self_loop) os << ' ' << FormatDouble(p);
    os << '\n';
  }
}

void HmmTopology::WriteFile(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  Write(os);
  if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace hasr::decode
