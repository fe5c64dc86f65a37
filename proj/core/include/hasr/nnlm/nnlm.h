// core/include/hasr/nnlm/nnlm.h

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

#ifndef HASR_NNLM_NNLM_H_
#define HASR_NNLM_NNLM_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hasr/common/kv_config.h"
#include "hasr/common/types.h"
#include "hasr/lm/ngram_model.h"
#include "hasr/nn/network.h"
#include "hasr/train/trainer.h"

namespace hasr::nnlm {

struct NnlmConfig {
  int history = 3;  // n - 1
  int embedding_dim = 16;
  int hidden_dim = 64;
  int epochs = 8;
  double lr0 = 0.5;
  double lr_decay = 0.9;
  std::size_t minibatch = 32;
  std::uint64_t seed = 1;

  void Validate() const;
  static NnlmConfig FromKv(const KvConfig& kv, const std::string& prefix = "nnlm.");
};

// Fixed-window training examples: `history` context ids and the next word.
struct ContextBatch {
  std::vector<WordId> contexts;  // rows × history, row-major
  std::vector<WordId> targets;
  std::size_t size() const { return targets.size(); }
};

class ContextDataset {
 public:
  // Every word and each sentence's </s>, with <s>-padded histories.
  ContextDataset(const lm::Corpus& corpus, const lm::Vocabulary& vocab, int history);

  std::size_t NumExamples() const { return targets_.size(); }
  ContextBatch MakeBatch(std::span<const std::size_t> indices) const;
  ContextBatch All() const;

 private:
  int history_;
  std::vector<WordId> contexts_;
  std::vector<WordId> targets_;
};

// Shared word embeddings for each history slot, one sigmoid hidden layer
// and a softmax over every vocabulary word except <s>.
class NnlmModel : public lm::LanguageModel {
 public:
  NnlmModel() = default;
  NnlmModel(lm::Vocabulary vocab, const NnlmConfig& config);

  const lm::Vocabulary& vocab() const override { return vocab_; }
  // Uses the last `history` words, left-padded with <s>.
  double LogProb(std::span<const WordId> history, WordId word) const override;

  int history() const { return history_; }
  int num_outputs() const { return vocab_.size() - 1; }
  // Output row per context: log-probabilities over words 1..V-1.
  Matrix LogPosteriors(const ContextBatch& batch) const;

  nn::StepStats TrainStep(const ContextBatch& batch, double lr, nn::DropoutState dropout);
  nn::StepStats Evaluate(const ContextBatch& batch) const;

  const Matrix& embeddings() const { return embed_; }
  const Matrix& hidden_weights() const { return w_hidden_; }
  const Vector& hidden_bias() const { return b_hidden_; }
  const Matrix& output_weights() const { return w_out_; }
  const Vector& output_bias() const { return b_out_; }

  void Write(std::ostream& os) const;
  static NnlmModel Read(std::istream& is);
  void Save(const std::string& path) const;
  static NnlmModel Load(const std::string& path);

  bool operator==(const NnlmModel& other) const;

 private:
  struct Activations {
    Matrix input;   // B × history*embedding
    Matrix hidden;  // B × hidden
    Matrix log_posteriors;
  };
  Activations Forward(const ContextBatch& batch) const;

  lm::Vocabulary vocab_;
  int history_ = 0;
  Matrix embed_;     // V × e
  Matrix w_hidden_;  // (history*e) × H
  Vector b_hidden_;
  Matrix w_out_;  // H × (V-1)
  Vector b_out_;
};

static_assert(train::TrainableOn<NnlmModel, ContextDataset>);

struct NnlmTrainResult {
  NnlmModel model;
  std::vector<train::EpochRecord> history;
  double initial_loss = 0.0;
};

NnlmTrainResult TrainNnlm(const lm::Corpus& corpus, const lm::Vocabulary& vocab, const NnlmConfig& config,
                          const lm::Corpus* heldout = nullptr);

}  // namespace hasr::nnlm

#endif  // HASR_NNLM_NNLM_H_
