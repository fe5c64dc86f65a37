// core/include/hasr/train/trainer.h

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

#ifndef HASR_TRAIN_TRAINER_H_
#define HASR_TRAIN_TRAINER_H_

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "hasr/common/errors.h"
#include "hasr/common/random.h"
#include "hasr/nn/network.h"
#include "hasr/train/dataset.h"
#include "hasr/train/schedule.h"

namespace hasr::train {

struct EpochRecord {
  int epoch = 0;
  double dropout_rate = 0.0;
  double learning_rate = 0.0;
  double loss = 0.0;            // mean pre-update training CE
  double frame_accuracy = 0.0;  // pre-update training accuracy
  double heldout_loss = 0.0;
  double heldout_accuracy = 0.0;
  bool has_heldout = false;
};

// Salt used to derive the frame permutation of an epoch from the seed.
inline std::uint64_t EpochSeed(std::uint64_t seed, int epoch) {
  return MixSeed(seed, 0x10000u + static_cast<std::uint64_t>(epoch));
}
inline std::uint64_t DropoutSeed(std::uint64_t seed, int epoch) {
  return MixSeed(seed, 0x20000u + static_cast<std::uint64_t>(epoch));
}

// One pass over all examples in a fresh permutation seeded by (seed, epoch),
// in minibatches of config.minibatch_frames (the last one may be short).
template <typename M, typename D>
  requires TrainableOn<M, D>
EpochRecord SgdEpoch(M& model, const D& data, const TrainConfig& config, int epoch) {
  config.Validate();
  const std::size_t n = data.NumExamples();
  if (n == 0) throw ConfigError("SGD epoch on an empty dataset");
  Rng perm_rng(EpochSeed(config.seed, epoch));
  const std::vector<std::size_t> perm = RandomPermutation(perm_rng, n);
  Rng dropout_rng(DropoutSeed(config.seed, epoch));

  EpochRecord rec;
  rec.epoch = epoch;
  rec.learning_rate = config.LearningRate(epoch);
  rec.dropout_rate = AnnealRate(config.dropout, epoch);
  const nn::DropoutState dropout{rec.dropout_rate, &dropout_rng};

  nn::StepStats total;
  for (std::size_t start = 0; start < n; start += config.minibatch_frames) {
    const std::size_t len = std::min(config.minibatch_frames, n - start);
    const auto batch = data.MakeBatch(std::span<const std::size_t>(perm).subspan(start, len));
    total += model.TrainStep(batch, rec.learning_rate, dropout);
  }
  rec.loss = total.MeanLoss();
  rec.frame_accuracy = total.Accuracy();
  return rec;
}

// Side-effect free evaluation in chunks of `chunk` examples.
template <typename M, typename D>
  requires TrainableOn<M, D>
nn::StepStats EvaluateDataset(const M& model, const D& data, std::size_t chunk = 2048) {
  nn::StepStats total;
  const std::size_t n = data.NumExamples();
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < n; start += chunk) {
    const std::size_t len = std::min(chunk, n - start);
    idx.resize(len);
    for (std::size_t i = 0; i < len; ++i) idx[i] = start + i;
    total += model.Evaluate(data.MakeBatch(idx));
  }
  return total;
}

// Runs config.epochs epochs (optionally reporting held-out statistics) and
// returns the per-epoch history.
template <typename M, typename D>
  requires TrainableOn<M, D>
std::vector<EpochRecord> RunEpochs(M& model, const D& data, const TrainConfig& config,
                                   const D* heldout = nullptr,
                                   const std::function<void(const EpochRecord&)>& on_epoch = {}) {
  std::vector<EpochRecord> history;
  for (int e = 0; e < config.epochs; ++e) {
    EpochRecord rec = SgdEpoch(model, data, config, e);
    if (heldout != nullptr && heldout->NumExamples() > 0) {
      const nn::StepStats h = EvaluateDataset(model, *heldout);
      rec.heldout_loss = h.MeanLoss();
      rec.heldout_accuracy = h.Accuracy();
      rec.has_heldout = true;
    }
    if (on_epoch) on_epoch(rec);
    history.push_back(rec);
  }
  return history;
}

// Index ranges [begin, end) of the hidden "stages" of a network: each
// starts at an affine, conv2d or recurrent layer and absorbs the
// parameter-free layers after it. The output affine and softmax are not
// part of any stage.
std::vector<std::pair<std::size_t, std::size_t>> HiddenStages(const nn::NetworkSpec& spec);

// Seed used to initialize the parameters of a network before training.
inline std::uint64_t InitSeed(std::uint64_t seed, int stage = 1) {
  return MixSeed(seed, 0x30000u + static_cast<std::uint64_t>(stage));
}

struct PretrainReport {
  int stages = 0;
  std::vector<double> stage_losses;  // final-epoch training CE of each stage
};

// Layerwise discriminative pretraining. Stage k trains the first k hidden
// stages plus a temporary affine+softmax output for `per_stage_epochs`
// epochs; the hidden layers carry over to the next stage and the
// temporary output is discarded. The last stage is the full network, so
// its output layer is kept.
nn::ModelParams LayerwisePretrain(const nn::NetworkSpec& spec, const FrameDataset& data,
                                  int per_stage_epochs, const TrainConfig& config,
                                  PretrainReport* report = nullptr);

struct TrainResult {
  nn::Network network;
  std::vector<EpochRecord> history;
  double initial_loss = 0.0;  // training CE before the first full epoch
};

// Pretraining (when pretrain_epochs > 0) followed by config.epochs epochs
// of SGD on the full network. With epochs == 0 the returned network is the
// random initialization.
TrainResult TrainNetwork(const nn::NetworkSpec& spec, const FrameDataset& train,
                         const FrameDataset* heldout, const TrainConfig& config,
                         int pretrain_epochs = 0);

// CSV with header: epoch,dropout_rate,lr,loss,frame_accuracy[,heldout_loss,heldout_accuracy]
void WriteHistoryCsv(const std::string& path, const std::vector<EpochRecord>& history);
std::string HistoryCsv(const std::vector<EpochRecord>& history);

}  // namespace hasr::train

#endif  // HASR_TRAIN_TRAINER_H_
