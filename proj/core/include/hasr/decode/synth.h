// core/include/hasr/decode/synth.h

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

#ifndef HASR_DECODE_SYNTH_H_
#define HASR_DECODE_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hasr/common/kv_config.h"
#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/decode/topology.h"

namespace hasr::decode {

struct SynthConfig {
  int vocab_size = 10;
  int states_per_word = 3;
  int feature_dim = 40;
  double mean_frames_per_state = 4.0;
  int num_utterances = 200;
  double mean_words = 6.0;
  int max_words = 20;
  int num_sides = 8;
  double mean_scale = 0.72;       // std of the per-state emission means
  double noise_std = 1.0;         // emission std around each mean
  double side_offset_std = 0.5;   // std of the per-side additive offset
  double lm_concentration = 0.3;  // Dirichlet parameter of the word trigram
  std::uint64_t seed = 1;

  void Validate() const;
  // Reads keys prefixed with `prefix` (e.g. "corpus.vocab_size").
  static SynthConfig FromKv(const KvConfig& kv, const std::string& prefix = "corpus.");
};

// Word trigram used to draw transcripts. Histories use -1 for <s>.
class TrigramGenerator {
 public:
  TrigramGenerator() = default;
  TrigramGenerator(int vocab_size, double end_prob, double concentration, Rng& rng);

  int vocab_size() const { return vocab_size_; }
  // Probability of `word` (vocab_size means </s>) after (w2, w1).
  double Probability(int w2, int w1, int word) const;
  std::vector<int> Sample(Rng& rng, int max_words) const;

 private:
  int vocab_size_ = 0;
  double end_prob_ = 0.0;
  std::vector<std::vector<double>> dist_;  // (w2 + 1) * (V + 1) + (w1 + 1)
};

// The generative model behind a synthetic corpus.
struct SynthModel {
  HmmTopology topology;
  Matrix means;  // num_states × dim
  double noise_std = 1.0;
  std::map<std::string, Vector> side_offsets;
  TrigramGenerator lm;

  // T × num_states Gaussian log-likelihoods of `frames` from side `side`.
  Matrix LogLikelihoods(const Matrix& frames, const std::string& side) const;
};

struct SynthUtterance {
  std::string utt_id;
  std::string side_id;
  std::vector<int> words;
  std::vector<StateId> states;
  Matrix frames;
};

struct SynthCorpus {
  SynthModel model;
  std::vector<SynthUtterance> utterances;

  std::vector<std::string> Words(const SynthUtterance& utt) const;
};

std::vector<std::string> DefaultVocabulary(int size);

// Deterministic in (config, seed): the same inputs give a bit-identical
// corpus. Distinct `split` values draw different utterances from the same
// generative model (e.g. train / heldout / test).
SynthCorpus GenerateCorpus(const SynthConfig& config, const std::string& split = "train");

// Directory layout: feats/<utt>.feat, feats.scp, ali.txt, text, utt2side,
// topology.txt.
void WriteCorpus(const SynthCorpus& corpus, const std::string& dir);

// Frame targets refined by the identity of the preceding word, giving
// num_states * contexts outputs: s + num_states * ((prev_word + 1) % contexts)
// with prev_word = -1 at the start of the utterance. Word boundaries are
// read off the state path (a word's first state entered from any other
// state).
std::vector<StateId> ContextTargets(const std::vector<StateId>& states, const HmmTopology& topology,
                                    int contexts);

}  // namespace hasr::decode

#endif  // HASR_DECODE_SYNTH_H_
