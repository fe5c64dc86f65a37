// core/src/experiment/experiment.cc

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

#include "hasr/experiment/experiment.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/fusion/score_fusion.h"

namespace hasr::experiment {
namespace fs = std::filesystem;
namespace {

class StageLog {
 public:
  explicit StageLog(const fs::path& path) : os_(path) {
    if (!os_) throw IoError("cannot write '" + path.string() + "'");
  }
  void Line(const std::string& s) {
    os_ << s << '\n';
    os_.flush();
  }
  template <typename F>
  auto Run(const std::string& stage, F&& f) {
    Line("stage " + stage + ": start");
    try {
      auto result = f();
      Line("stage " + stage + ": done");
      return result;
    } catch (const std::exception& e) {
      Line("stage " + stage + ": FAILED: " + e.what());
      throw Error("experiment stage '" + stage + "' failed: " + e.what());
    }
  }

 private:
  std::ofstream os_;
};

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

train::TrainConfig ReadTrainConfig(const KvConfig& kv, const std::string& prefix, train::TrainConfig c) {
  c.epochs = static_cast<int>(kv.GetInt(prefix + "epochs", c.epochs));
  c.lr0 = kv.GetDouble(prefix + "lr", c.lr0);
  c.lr_decay = kv.GetDouble(prefix + "lr_decay", c.lr_decay);
  c.minibatch_frames =
      static_cast<std::size_t>(kv.GetInt(prefix + "minibatch_frames", static_cast<std::int64_t>(c.minibatch_frames)));
  c.seed = static_cast<std::uint64_t>(kv.GetInt(prefix + "seed", static_cast<std::int64_t>(c.seed)));
  c.Validate();
  return c;
}

AcousticModel ContinueTraining(const AcousticModel& m, const AmData& data, const train::TrainConfig& config) {
  nn::Network net = m.network();
  const train::FrameDataset ds =
      train::FrameDataset::FromUtterances(m.Inputs(data), OutputTargets(data, m.contexts()));
  train::RunEpochs(net, ds, config);
  return AcousticModel(std::move(net), m.pipelines()[0], m.ldas()[0], m.priors(), m.contexts());
}

FusionRow Score(const std::string& name, const std::vector<Matrix>& dev_lp, const std::vector<Matrix>& test_lp,
                const AmData& dev, const AmData& test, const decode::PriorVector& priors, double kappa) {
  FusionRow r;
  r.system = name;
  r.dev_frame_accuracy = FrameAccuracy(dev_lp, dev);
  r.test_frame_accuracy = FrameAccuracy(test_lp, test);
  r.test_wer = DecodeAll(test_lp, test, priors, kappa).wer.Rate();
  return r;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromKv(const KvConfig& kv) {
  ExperimentConfig c;
  c.output_dir = kv.GetString("output_dir", c.output_dir);
  c.corpus = decode::SynthConfig::FromKv(kv, "corpus.");
  c.train_utterances = static_cast<int>(kv.GetInt("corpus.train_utterances", c.train_utterances));
  c.dev_utterances = static_cast<int>(kv.GetInt("corpus.dev_utterances", c.dev_utterances));
  c.test_utterances = static_cast<int>(kv.GetInt("corpus.test_utterances", c.test_utterances));
  c.acoustic_scale = kv.GetDouble("acoustic_scale", c.acoustic_scale);
  if (kv.Has("models")) {
    for (const auto& name : kv.GetList("models")) {
      c.models.push_back(AmModelConfig::FromKv(kv, "model." + name + ".", name));
    }
  }
  if (kv.Has("fusion.members")) {
    c.fusion.members = kv.GetList("fusion.members");
    if (kv.Has("fusion.weights")) c.fusion.weights = kv.GetDoubleList("fusion.weights");
    train::TrainConfig retrain;
    retrain.epochs = 3;
    retrain.lr0 = 0.2;
    c.fusion.retrain = ReadTrainConfig(kv, "fusion.", retrain);
    c.fusion.trained_init_epochs = static_cast<int>(kv.GetInt("fusion.trained_init_epochs", 0));
    for (const auto& m : c.fusion.members) {
      bool found = false;
      for (const auto& mc : c.models) found = found || mc.name == m;
      if (!found) throw ConfigError("fusion member '" + m + "' is not listed in 'models'");
    }
    if (c.fusion.members.size() == 1) throw ConfigError("fusion.members needs at least two models");
  }
  c.run_ladder = kv.GetBool("ladder.enabled", false);
  c.ladder_fixture_dir = kv.GetString("ladder.fixture_dir", "");
  c.ladder_fixture = LadderFixtureConfig::FromKv(kv, "fixture.");
  c.ladder = LadderConfig::FromKv(kv, "ladder.");
  const auto unused = kv.UnusedKeys();
  if (!unused.empty()) {
    std::string list;
    for (const auto& k : unused) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError(kv.origin() + ": unknown keys: " + list);
  }
  return c;
}

std::string ModelsCsv(const std::vector<ModelRow>& rows) {
  std::ostringstream os;
  os << "model,arch,params,outputs,initial_loss,final_loss,dev_frame_accuracy,test_frame_accuracy,test_wer\n";
  for (const auto& r : rows) {
    os << r.name << ',' << r.arch << ',' << r.params << ',' << r.outputs << ',' << FormatDouble(r.initial_loss)
       << ',' << FormatDouble(r.final_loss) << ',' << FormatDouble(r.dev_frame_accuracy) << ','
       << FormatDouble(r.test_frame_accuracy) << ',' << FormatDouble(r.test_wer) << '\n';
  }
  return os.str();
}

std::string FusionCsv(const std::vector<FusionRow>& rows) {
  std::ostringstream os;
  os << "system,dev_frame_accuracy,test_frame_accuracy,test_wer,train_ce\n";
  for (const auto& r : rows) {
    os << r.system << ',' << FormatDouble(r.dev_frame_accuracy) << ',' << FormatDouble(r.test_frame_accuracy) << ','
       << FormatDouble(r.test_wer) << ',' << FormatDouble(r.train_ce) << '\n';
  }
  return os.str();
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  const fs::path out(config.output_dir);
  fs::create_directories(out / "models");
  StageLog log(out / "log.txt");
  ExperimentReport report;
  std::ostringstream summary;

  struct Splits {
    AmData train, dev, test;
  };
  const bool need_corpus = !config.models.empty();
  Splits data;
  if (need_corpus) {
    data = log.Run("corpus", [&] {
      decode::SynthConfig sc = config.corpus;
      Splits s;
      sc.num_utterances = config.train_utterances;
      s.train = FromSynth(decode::GenerateCorpus(sc, "train"));
      sc.num_utterances = config.dev_utterances;
      s.dev = FromSynth(decode::GenerateCorpus(sc, "dev"));
      sc.num_utterances = config.test_utterances;
      s.test = FromSynth(decode::GenerateCorpus(sc, "test"));
      return s;
    });
    log.Line("corpus: " + std::to_string(data.train.NumFrames()) + " train frames, " +
             std::to_string(data.dev.NumFrames()) + " dev frames, " + std::to_string(data.test.NumFrames()) +
             " test frames");
  }

  std::map<std::string, AcousticModel> trained;
  for (const auto& mc : config.models) {
    ModelRow row = log.Run("train:" + mc.name, [&] {
      AmTrainResult r = TrainAcousticModel(mc, data.train, &data.dev);
      WriteText(out / ("history_" + mc.name + ".csv"), train::HistoryCsv(r.history));
      r.model.Save((out / "models" / mc.name).string());
      ModelRow row;
      row.name = mc.name;
      row.arch = mc.arch;
      row.params = r.model.NumParams();
      row.outputs = r.model.num_states() * r.model.contexts();
      row.initial_loss = r.initial_loss;
      row.final_loss = r.history.empty() ? r.initial_loss : r.history.back().loss;
      const auto dev_lp = r.model.StateLogPosteriors(data.dev);
      const auto test_lp = r.model.StateLogPosteriors(data.test);
      row.dev_frame_accuracy = FrameAccuracy(dev_lp, data.dev);
      row.test_frame_accuracy = FrameAccuracy(test_lp, data.test);
      row.test_wer = DecodeAll(test_lp, data.test, r.model.priors(), config.acoustic_scale).wer.Rate();
      trained.emplace(mc.name, std::move(r.model));
      return row;
    });
    report.models.push_back(row);
  }
  if (!report.models.empty()) WriteText(out / "models.csv", ModelsCsv(report.models));

  if (!config.fusion.members.empty()) {
    report.fusion = log.Run("fusion", [&] {
      std::vector<FusionRow> rows;
      std::vector<const AcousticModel*> members;
      std::string tag;
      for (const auto& name : config.fusion.members) {
        members.push_back(&trained.at(name));
        tag += (tag.empty() ? "" : "+") + name;
      }
      const std::vector<double> weights =
          config.fusion.weights.empty() ? fusion::UniformWeights(members.size()) : config.fusion.weights;
      const decode::PriorVector& priors = members[0]->priors();
      const double kappa = config.acoustic_scale;
      for (std::size_t m = 0; m < members.size(); ++m) {
        rows.push_back(Score(config.fusion.members[m], members[m]->StateLogPosteriors(data.dev),
                             members[m]->StateLogPosteriors(data.test), data.dev, data.test, priors, kappa));
      }
      rows.push_back(Score("score_fusion(" + tag + ")", FusedStateLogPosteriors(members, data.dev, weights),
                           FusedStateLogPosteriors(members, data.test, weights), data.dev, data.test, priors, kappa));

      auto joint_rows = [&](const std::string& label, const std::vector<const AcousticModel*>& from) {
        const AcousticModel joint = BuildJointModel(from, weights);
        FusionRow init = Score("joint_init_" + label, joint.StateLogPosteriors(data.dev),
                               joint.StateLogPosteriors(data.test), data.dev, data.test, priors, kappa);
        AmTrainResult r = RetrainJointModel(joint, data.train, config.fusion.retrain, &data.dev);
        init.train_ce = r.initial_loss;
        rows.push_back(init);
        FusionRow done = Score("joint_retrained_" + label, r.model.StateLogPosteriors(data.dev),
                               r.model.StateLogPosteriors(data.test), data.dev, data.test, priors, kappa);
        done.train_ce = r.history.empty() ? r.initial_loss : r.history.back().loss;
        rows.push_back(done);
        WriteText(out / ("history_joint_" + label + ".csv"), train::HistoryCsv(r.history));
        r.model.Save((out / "models" / ("joint_" + label)).string());
      };
      joint_rows("from_ce", members);
      if (config.fusion.trained_init_epochs > 0) {
        std::vector<AcousticModel> further;
        for (std::size_t m = 0; m < members.size(); ++m) {
          train::TrainConfig tc = config.fusion.retrain;
          tc.epochs = config.fusion.trained_init_epochs;
          tc.seed = MixSeed(tc.seed, m + 1);
          further.push_back(ContinueTraining(*members[m], data.train, tc));
        }
        std::vector<const AcousticModel*> ptrs;
        for (const auto& f : further) ptrs.push_back(&f);
        joint_rows("from_trained", ptrs);
      }
      return rows;
    });
    WriteText(out / "fusion.csv", FusionCsv(report.fusion));
  }

  if (config.run_ladder) {
    report.ladder = log.Run("lm_ladder", [&] {
      const LadderData ld = config.ladder_fixture_dir.empty() ? MakeLadderData(config.ladder_fixture)
                                                              : LadderData::Load(config.ladder_fixture_dir);
      if (config.ladder_fixture_dir.empty()) ld.Save((out / "ladder_data").string());
      return RunLmLadder(ld, config.ladder);
    });
    WriteText(out / "lm_ladder.csv", LadderCsv(report.ladder));
  }

  summary << "models\n";
  for (const auto& r : report.models) {
    summary << "  " << r.name << ": test frame accuracy " << FormatDouble(r.test_frame_accuracy) << ", test WER "
            << FormatDouble(r.test_wer) << '\n';
  }
  if (!report.fusion.empty()) {
    summary << "fusion\n";
    for (const auto& r : report.fusion) {
      summary << "  " << r.system << ": test frame accuracy " << FormatDouble(r.test_frame_accuracy) << ", test WER "
              << FormatDouble(r.test_wer) << '\n';
    }
  }
  if (!report.ladder.empty()) {
    summary << "lm ladder\n";
    for (const auto& r : report.ladder) {
      summary << "  " << r.name << ": heldout PPL " << FormatDouble(r.heldout_perplexity) << ", test WER "
              << FormatDouble(r.test_wer) << '\n';
    }
  }
  WriteText(out / "summary.txt", summary.str());
  log.Line("finished");
  return report;
}

}  // namespace hasr::experiment
