// core/include/hasr/experiment/lm_ladder.h

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

#ifndef HASR_EXPERIMENT_LM_LADDER_H_
#define HASR_EXPERIMENT_LM_LADDER_H_

#include <map>
#include <string>
#include <vector>

#include "hasr/common/kv_config.h"
#include "hasr/decode/nbest.h"
#include "hasr/decode/synth.h"
#include "hasr/experiment/acoustic_model.h"
#include "hasr/lm/vocabulary.h"
#include "hasr/nnlm/nnlm.h"
#include "hasr/nnlm/rescore.h"

namespace hasr::experiment {

using References = std::map<std::string, std::vector<std::string>>;

// Text and N-best material for a rescoring ladder. `in_domain` trains the
// baseline and NNLM, `broad` a second n-gram that is interpolated with
// the in-domain one, `heldout` tunes interpolation weights.
struct LadderData {
  lm::Corpus in_domain;
  lm::Corpus broad;
  lm::Corpus heldout;
  std::vector<decode::NBestList> dev;
  References dev_refs;
  std::vector<decode::NBestList> test;
  References test_refs;

  // Reads lm_train.txt, lm_broad.txt, lm_heldout.txt, dev.nbest, dev.ref,
  // test.nbest and test.ref from `dir`.
  static LadderData Load(const std::string& dir);
  void Save(const std::string& dir) const;
};

// Synthetic ladder material: an acoustic model trained on a deliberately
// hard synthetic corpus produces dev/test N-best lists; LM text is drawn
// from the corpus word generator (in-domain and held-out) and from a
// blend with an unrelated generator (broad).
struct LadderFixtureConfig {
  decode::SynthConfig corpus;
  AmModelConfig am;
  int train_utterances = 150;
  int dev_utterances = 200;
  int test_utterances = 300;
  int nbest = 20;
  int in_domain_sentences = 600;
  int broad_sentences = 3000;
  double broad_in_domain_fraction = 0.3;
  int heldout_sentences = 300;

  LadderFixtureConfig();
  static LadderFixtureConfig FromKv(const KvConfig& kv, const std::string& prefix = "fixture.");
};

LadderData MakeLadderData(const LadderFixtureConfig& config);

struct LadderConfig {
  int baseline_order = 2;
  int interpolated_order = 3;
  nnlm::NnlmConfig nnlm;
  std::vector<double> lm_weights{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  std::vector<double> word_bonuses{-2.0, -1.0, 0.0, 1.0, 2.0};

  LadderConfig();
  static LadderConfig FromKv(const KvConfig& kv, const std::string& prefix = "ladder.");
};

struct LadderRow {
  std::string name;
  double heldout_perplexity = 0.0;  // 0 for the acoustic-only row
  std::vector<double> mixture_weights;
  nnlm::RescoreWeights weights;  // tuned on dev
  double dev_wer = 0.0;
  double test_wer = 0.0;
};

// Rows: acoustic scores only, baseline n-gram, interpolated n-gram, and
// interpolated n-gram plus NNLM. Score weights are grid-searched on dev
// and applied unchanged to test.
std::vector<LadderRow> RunLmLadder(const LadderData& data, const LadderConfig& config);

std::string LadderCsv(const std::vector<LadderRow>& rows);

}  // namespace hasr::experiment

#endif  // HASR_EXPERIMENT_LM_LADDER_H_
