// tools/commands/experiment_command.cc

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

#include <filesystem>
#include <iostream>
#include <memory>

#include "commands/common.h"
#include "hasr/common/text_util.h"
#include "hasr/experiment/experiment.h"
#include "hasr/experiment/lm_ladder.h"

namespace hasr::tools {
namespace {

void RunExperimentCommand(const std::string& config_path, const std::string& output_dir) {
  const KvConfig kv = KvConfig::FromFile(config_path);
  experiment::ExperimentConfig cfg = experiment::ExperimentConfig::FromKv(kv);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  cfg.output_dir = ResolveOutputDir(cfg.output_dir);
  const experiment::ExperimentReport report = experiment::RunExperiment(cfg);
  std::cout << experiment::ModelsCsv(report.models);
  if (!report.fusion.empty()) std::cout << '\n' << experiment::FusionCsv(report.fusion);
  if (!report.ladder.empty()) std::cout << '\n' << experiment::LadderCsv(report.ladder);
  std::cout << "\nreport -> " << cfg.output_dir << '\n';
}

void RunLadderCommand(const std::string& config_path, const std::string& fixture_dir, const std::string& make_out) {
  KvConfig kv = config_path.empty() ? KvConfig() : KvConfig::FromFile(config_path);
  if (!make_out.empty()) {
    const experiment::LadderFixtureConfig fc = experiment::LadderFixtureConfig::FromKv(kv, "fixture.");
    RejectUnusedKeys(kv);
    experiment::MakeLadderData(fc).Save(ResolveOutputDir(make_out));
    std::cout << "fixture -> " << ResolveOutputDir(make_out) << '\n';
    return;
  }
  const experiment::LadderConfig lc = experiment::LadderConfig::FromKv(kv, "ladder.");
  RejectUnusedKeys(kv);
  std::cout << experiment::LadderCsv(experiment::RunLmLadder(experiment::LadderData::Load(fixture_dir), lc));
}

}  // namespace

void AddExperimentCommand(CLI::App& app) {
  {
    auto* cmd = app.add_subcommand("experiment", "run a full configured experiment and write a report");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "experiment config")->required();
    cmd->add_option("--output-dir", *out, "override output_dir");
    cmd->callback([=] { RunExperimentCommand(*config, *out); });
  }
  {
    auto* cmd = app.add_subcommand("ladder", "language-model ladder on an N-best fixture");
    auto config = std::make_shared<std::string>();
    auto fixture = std::make_shared<std::string>();
    auto make = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "config with ladder.* (or fixture.* with --make-fixture) keys");
    auto* f = cmd->add_option("--fixture", *fixture, "fixture directory to evaluate");
    auto* m = cmd->add_option("--make-fixture", *make, "generate a fixture into this directory instead");
    f->excludes(m);
    cmd->callback([=] {
      if (fixture->empty() && make->empty()) throw ConfigError("give --fixture or --make-fixture");
      RunLadderCommand(*config, *fixture, *make);
    });
  }
}

}  // namespace hasr::tools
