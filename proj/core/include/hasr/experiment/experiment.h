// core/include/hasr/experiment/experiment.h

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

#ifndef HASR_EXPERIMENT_EXPERIMENT_H_
#define HASR_EXPERIMENT_EXPERIMENT_H_

#include <string>
#include <vector>

#include "hasr/common/kv_config.h"
#include "hasr/decode/synth.h"
#include "hasr/experiment/acoustic_model.h"
#include "hasr/experiment/lm_ladder.h"

namespace hasr::experiment {

struct FusionSettings {
  std::vector<std::string> members;  // model names; empty disables the stage
  std::vector<double> weights;       // empty means uniform
  train::TrainConfig retrain;        // joint retraining schedule
  int trained_init_epochs = 0;       // >0 adds joint rows built from further-trained members
};

struct ExperimentConfig {
  std::string output_dir = "report";
  decode::SynthConfig corpus;
  int train_utterances = 200;
  int dev_utterances = 100;
  int test_utterances = 100;
  double acoustic_scale = 1.0;
  std::vector<AmModelConfig> models;
  FusionSettings fusion;
  bool run_ladder = false;
  std::string ladder_fixture_dir;  // empty: generate from fixture.* keys
  LadderFixtureConfig ladder_fixture;
  LadderConfig ladder;

  // Keys: output_dir, corpus.*, corpus.{train,dev,test}_utterances,
  // acoustic_scale, models = a b ..., model.<name>.*, fusion.members,
  // fusion.weights, fusion.epochs, fusion.lr, fusion.lr_decay,
  // fusion.minibatch_frames, fusion.seed, fusion.trained_init_epochs,
  // ladder.enabled, ladder.fixture_dir, fixture.*, ladder.*.
  static ExperimentConfig FromKv(const KvConfig& kv);
};

struct ModelRow {
  std::string name;
  std::string arch;
  std::size_t params = 0;
  int outputs = 0;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double dev_frame_accuracy = 0.0;
  double test_frame_accuracy = 0.0;
  double test_wer = 0.0;
};

struct FusionRow {
  std::string system;
  double dev_frame_accuracy = 0.0;
  double test_frame_accuracy = 0.0;
  double test_wer = 0.0;
  double train_ce = 0.0;  // joint rows: training CE (0 for the others)
};

struct ExperimentReport {
  std::vector<ModelRow> models;
  std::vector<FusionRow> fusion;
  std::vector<LadderRow> ladder;
};

// Runs every configured stage and writes models.csv, fusion.csv,
// lm_ladder.csv, history_<model>.csv, summary.txt, log.txt and the trained
// models under <output_dir>/models/. A failing stage is logged and
// rethrown as an Error naming the stage.
ExperimentReport RunExperiment(const ExperimentConfig& config);

std::string ModelsCsv(const std::vector<ModelRow>& rows);
std::string FusionCsv(const std::vector<FusionRow>& rows);

}  // namespace hasr::experiment

#endif  // HASR_EXPERIMENT_EXPERIMENT_H_
