// core/include/hasr/experiment/acoustic_model.h

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

#ifndef HASR_EXPERIMENT_ACOUSTIC_MODEL_H_
#define HASR_EXPERIMENT_ACOUSTIC_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "hasr/common/kv_config.h"
#include "hasr/decode/nbest.h"
#include "hasr/decode/priors.h"
#include "hasr/decode/wer.h"
#include "hasr/experiment/am_data.h"
#include "hasr/features/lda.h"
#include "hasr/features/pipeline.h"
#include "hasr/fusion/joint_model.h"
#include "hasr/nn/network.h"
#include "hasr/train/trainer.h"

namespace hasr::experiment {

// Architecture and training settings of one acoustic model. Read from
// keys under a prefix such as "model.dnn." (see FromKv for the key names).
struct AmModelConfig {
  std::string name = "model";
  std::string arch = "dnn";  // dnn | cnn | rnn | layers
  nn::Nonlinearity nonlinearity = nn::Nonlinearity::kSigmoid;
  std::vector<int> hidden{64, 64};
  bool equalize_maxout = false;  // widen maxout layers to the sigmoid parameter budget
  int group_size = 2;
  int bottleneck = 32;
  int contexts = 1;  // output inventory = states × contexts
  std::string pipeline = "cmvn,splice:4";
  std::string layers;  // arch = layers: ParseLayerString description

  int conv1_filters = 8, conv1_window_h = 5, conv1_window_w = 3;
  int pool_h = 2, pool_w = 1;
  int conv2_filters = 8, conv2_window_h = 3, conv2_window_w = 1;
  int recurrent_dim = 64;

  train::TrainConfig train;
  int pretrain_epochs = 0;

  AmModelConfig() { train.lr0 = 1.0; }
  static AmModelConfig FromKv(const KvConfig& kv, const std::string& prefix, const std::string& name);
  void Validate() const;
  nn::NetworkSpec BuildSpec(int frame_dim, int num_states) const;
};

// A trained network (or joint model) together with everything needed to
// turn raw frames into state scores.
class AcousticModel {
 public:
  AcousticModel() = default;
  AcousticModel(nn::Network network, features::FeaturePipeline pipeline, std::optional<features::LdaTransform> lda,
                decode::PriorVector priors, int contexts);
  AcousticModel(fusion::JointModel joint, std::vector<features::FeaturePipeline> pipelines,
                std::vector<std::optional<features::LdaTransform>> ldas, decode::PriorVector priors, int contexts);

  bool is_joint() const { return joint_.has_value(); }
  const nn::Network& network() const;
  const fusion::JointModel& joint() const;
  const std::vector<features::FeaturePipeline>& pipelines() const { return pipelines_; }
  const std::vector<std::optional<features::LdaTransform>>& ldas() const { return ldas_; }
  const decode::PriorVector& priors() const { return priors_; }
  int contexts() const { return contexts_; }
  int num_states() const { return static_cast<int>(priors_.size()); }
  std::size_t NumParams() const;

  // Per-utterance network inputs.
  std::vector<Matrix> Inputs(const AmData& data) const;
  // Pre-softmax outputs over states × contexts.
  std::vector<Matrix> Logits(const AmData& data) const;
  // Log-posteriors over HMM states (context outputs summed).
  std::vector<Matrix> StateLogPosteriors(const AmData& data) const;

  void Save(const std::string& dir) const;
  static AcousticModel Load(const std::string& dir);

 private:
  std::optional<nn::Network> network_;
  std::optional<fusion::JointModel> joint_;
  std::vector<features::FeaturePipeline> pipelines_;
  std::vector<std::optional<features::LdaTransform>> ldas_;
  decode::PriorVector priors_;
  int contexts_ = 1;
};

// Log-sum-exp over the context copies of each state: column s + S*c.
Matrix CollapseContexts(const Matrix& log_posteriors, int num_states, int contexts);

// Frame targets for an output inventory of num_states × contexts.
std::vector<std::vector<StateId>> OutputTargets(const AmData& data, int contexts);

struct AmTrainResult {
  AcousticModel model;
  std::vector<train::EpochRecord> history;
  double initial_loss = 0.0;
};

AmTrainResult TrainAcousticModel(const AmModelConfig& config, const AmData& train_data,
                                 const AmData* heldout = nullptr);

// Frame-level state accuracy of per-utterance log-posteriors.
double FrameAccuracy(const std::vector<Matrix>& state_log_posteriors, const AmData& data);

struct DecodeReport {
  std::vector<std::pair<std::string, std::vector<std::string>>> hypotheses;
  decode::WerReport wer;  // empty when the data has no transcripts
};

// Hybrid Viterbi decoding of every utterance: kappa * (log post - log prior).
DecodeReport DecodeAll(const std::vector<Matrix>& state_log_posteriors, const AmData& data,
                       const decode::PriorVector& priors, double kappa = 1.0);

std::vector<decode::NBestList> MakeNBestLists(const std::vector<Matrix>& state_log_posteriors, const AmData& data,
                                              const decode::PriorVector& priors, int n, double kappa = 1.0);

// Uniform-or-weighted score fusion of member logits, as state log-posteriors.
std::vector<Matrix> FusedStateLogPosteriors(const std::vector<const AcousticModel*>& members, const AmData& data,
                                            const std::vector<double>& weights);

// Joint model of single-network members; priors are taken from the first.
AcousticModel BuildJointModel(const std::vector<const AcousticModel*>& members, const std::vector<double>& weights);

AmTrainResult RetrainJointModel(const AcousticModel& joint, const AmData& train_data,
                                const train::TrainConfig& config, const AmData* heldout = nullptr);

}  // namespace hasr::experiment

#endif  // HASR_EXPERIMENT_ACOUSTIC_MODEL_H_
