// core/include/hasr/decode/topology.h

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

#ifndef HASR_DECODE_TOPOLOGY_H_
#define HASR_DECODE_TOPOLOGY_H_

#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hasr/common/types.h"

namespace hasr::decode {

// A word is a left-to-right chain of states; state j either loops with
// probability self_loop[j] or advances. Leaving the last state ends the
// word. Words are entered with uniform probability 1/V, at the start of an
// utterance and (when `loop` is set) after every word end. Decoding must
// finish in the last state of some word.
struct HmmWord {
  std::string name;
  std::vector<double> self_loop;

  int num_states() const { return static_cast<int>(self_loop.size()); }
};

class HmmTopology {
 public:
  HmmTopology() = default;
  HmmTopology(std::vector<HmmWord> words, bool loop);

  // `vocab` words with `states_per_word` states each and a common self-loop
  // probability.
  static HmmTopology Uniform(const std::vector<std::string>& vocab, int states_per_word, double self_loop,
                             bool loop = true);

  int num_words() const { return static_cast<int>(words_.size()); }
  int num_states() const { return static_cast<int>(state_word_.size()); }
  bool loop() const { return loop_; }
  const HmmWord& word(int w) const { return words_[w]; }
  const std::vector<HmmWord>& words() const { return words_; }

  StateId FirstState(int w) const { return offsets_[w]; }
  StateId LastState(int w) const { return offsets_[w] + words_[w].num_states() - 1; }
  int WordOf(StateId s) const { return state_word_[s]; }
  int PositionOf(StateId s) const { return s - offsets_[state_word_[s]]; }
  bool IsFirst(StateId s) const { return PositionOf(s) == 0; }
  bool IsLast(StateId s) const { return s == LastState(state_word_[s]); }

  double LogSelfLoop(StateId s) const { return log_self_[s]; }
  // Advance within the word, or exit it from the last state.
  double LogAdvance(StateId s) const { return log_advance_[s]; }
  double LogWordEntry() const { return log_entry_; }

  // Word index by name, or -1.
  int FindWord(const std::string& name) const;

  // Text format, one directive per line ('#' starts a comment):
  //   loop true|false
  //   word <name> <num_states> <self_loop_1> ... <self_loop_n>
  static HmmTopology Parse(std::istream& is, const std::string& origin = "<stream>");
  static HmmTopology FromFile(const std::string& path);
  void Write(std::ostream& os) const;
  void WriteFile(const std::string& path) const;

 private:
  std::vector<HmmWord> words_;
  std::vector<StateId> offsets_;
  std::vector<int> state_word_;
  std::vector<double> log_self_;
  std::vector<double> log_advance_;
  std::unordered_map<std::string, int> index_;
  double log_entry_ = 0.0;
  bool loop_ = true;
};

}  // namespace hasr::decode

#endif  // HASR_DECODE_TOPOLOGY_H_
