// core/src/train/trainer.cc

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

#include "hasr/train/trainer.h"

#include <fstream>
#include <sstream>

#include "hasr/common/text_util.h"
#include "hasr/nn/model_params.h"

namespace hasr::train {

using nn::LayerKind;

std::vector<std::pair<std::size_t, std::size_t>> HiddenStages(const nn::NetworkSpec& spec) {
  const std::size_t head = spec.OutputAffineIndex();
  std::vector<std::pair<std::size_t, std::size_t>> stages;
  for (std::size_t i = 0; i < head; ++i) {
    const LayerKind k = spec.layers[i].kind;
    const bool starts = k == LayerKind::kAffine || k == LayerKind::kConv2d ||
                        k == LayerKind::kRecurrentUnfolded;
    if (starts || stages.empty()) {
      stages.push_back({i, i + 1});
    } else {
      stages.back().second = i + 1;
    }
  }
  return stages;
}

nn::ModelParams LayerwisePretrain(const nn::NetworkSpec& spec, const FrameDataset& data,
                                  int per_stage_epochs, const TrainConfig& config,
                                  PretrainReport* report) {
  spec.Validate();
  config.Validate();
  const auto stages = HiddenStages(spec);
  if (stages.empty()) throw ConfigError("layerwise pretraining needs at least one hidden layer");
  const std::size_t head = spec.OutputAffineIndex();
  const int num_outputs = spec.output_dim();

  TrainConfig stage_config = config;
  stage_config.epochs = per_stage_epochs;

  nn::ModelParams carried;  // trained layers [0, stages[k-1].second)
  nn::ModelParams result;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const std::size_t end = stages[k].second;
    const bool last = k + 1 == stages.size();
    // Fresh parameters for the whole target network; only the new stage
    // (and, on the last stage, the real output layer) are taken from here.
    const nn::ModelParams fresh = InitParams(spec, InitSeed(config.seed, static_cast<int>(k) + 1));

    nn::NetworkSpec stage_spec;
    stage_spec.layers.assign(spec.layers.begin(), spec.layers.begin() + end);
    nn::ModelParams stage_params;
    stage_params.layers.assign(carried.layers.begin(), carried.layers.end());
    for (std::size_t i = stage_params.layers.size(); i < end; ++i) {
      stage_params.layers.push_back(fresh.layers[i]);
    }
    if (last) {
      for (std::size_t i = head; i < spec.layers.size(); ++i) {
        stage_spec.layers.push_back(spec.layers[i]);
        stage_params.layers.push_back(fresh.layers[i]);
      }
    } else {
      const int width = spec.layers[end - 1].output_dim;
      Rng head_rng(MixSeed(config.seed, 0x40000u + k));
      stage_spec.layers.push_back(nn::LayerSpec::Affine(width, num_outputs));
      stage_spec.layers.push_back(nn::LayerSpec::SoftmaxOutput(num_outputs));
      stage_params.layers.push_back(nn::InitLayerParams(stage_spec.layers[end], head_rng));
      stage_params.layers.push_back({});
    }

    nn::Network stage_net(stage_spec, stage_params);
    const auto history = RunEpochs(stage_net, data, stage_config);
    if (report) {
      report->stage_losses.push_back(history.empty() ? 0.0 : history.back().loss);
    }
    const nn::ModelParams& trained = stage_net.params();
    carried.layers.assign(trained.layers.begin(), trained.layers.begin() + end);
    if (last) result = trained;
  }
  if (report) report->stages = static_cast<int>(stages.size());
  return result;
}

TrainResult TrainNetwork(const nn::NetworkSpec& spec, const FrameDataset& train,
                         const FrameDataset* heldout, const TrainConfig& config,
                         int pretrain_epochs) {
  config.Validate();
  train.Validate();
  if (train.NumExamples() == 0) throw ConfigError("training set is empty");
  nn::ModelParams params;
  if (pretrain_epochs > 0 && config.epochs > 0) {
    TrainConfig pre = config;
    pre.dropout.p0 = 0.0;
    params = LayerwisePretrain(spec, train, pretrain_epochs, pre);
  } else {
    params = InitParams(spec, InitSeed(config.seed));
  }
  TrainResult result{nn::Network(spec, std::move(params)), {}, 0.0};
  if (config.epochs == 0) return result;
  result.initial_loss = EvaluateDataset(result.network, train).MeanLoss();
  result.history = RunEpochs(result.network, train, config, heldout);
  return result;
}

std::string HistoryCsv(const std::vector<EpochRecord>& history) {
  std::ostringstream os;
  const bool heldout = !history.empty() && history.front().has_heldout;
  os << "epoch,dropout_rate,lr,loss,frame_accuracy";
  if (heldout) os << ",heldout_loss,heldout_accuracy";
  os << '\n';
  for (const auto& r : history) {
    os << r.epoch << ',' << FormatDouble(r.dropout_rate) << ',' << FormatDouble(r.learning_rate)
       << ',' << FormatDouble(r.loss) << ',' << FormatDouble(r.frame_accuracy);
    if (heldout) os << ',' << FormatDouble(r.heldout_loss) << ',' << FormatDouble(r.heldout_accuracy);
    os << '\n';
  }
  return os.str();
}

void WriteHistoryCsv(const std::string& path, const std::vector<EpochRecord>& history) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << HistoryCsv(history);
}

}  // namespace hasr::train
