// tools/commands/am_commands.cc

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
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "commands/common.h"
#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/decode/synth.h"
#include "hasr/experiment/acoustic_model.h"
#include "hasr/features/io.h"
#include "hasr/features/logmel.h"
#include "hasr/fusion/score_fusion.h"

namespace hasr::tools {
namespace fs = std::filesystem;
namespace {

using experiment::AcousticModel;
using experiment::AmData;

void WriteHypotheses(const std::string& path, const experiment::DecodeReport& r) {
  features::WriteTranscripts(path, r.hypotheses);
}

void PrintWer(const decode::WerReport& w) {
  std::cout << "WER " << FormatDouble(100.0 * w.Rate()) << " % [ " << w.Errors() << " / " << w.reference_words << ", "
            << w.insertions << " ins, " << w.deletions << " del, " << w.substitutions << " sub ]\n";
}

void RunSynth(const std::string& config_path, std::string out_dir) {
  KvConfig kv = config_path.empty() ? KvConfig() : KvConfig::FromFile(config_path);
  const decode::SynthConfig base = decode::SynthConfig::FromKv(kv, "corpus.");
  out_dir = ResolveOutputDir(kv.GetString("output_dir", out_dir));
  std::vector<std::string> splits{"train", "dev", "test"};
  if (kv.Has("corpus.splits")) splits = kv.GetList("corpus.splits");
  std::vector<int> counts;
  for (const auto& s : splits) counts.push_back(static_cast<int>(kv.GetInt("corpus." + s + "_utterances", base.num_utterances)));
  RejectUnusedKeys(kv);
  for (std::size_t i = 0; i < splits.size(); ++i) {
    decode::SynthConfig sc = base;
    sc.num_utterances = counts[i];
    const decode::SynthCorpus corpus = decode::GenerateCorpus(sc, splits[i]);
    decode::WriteCorpus(corpus, (fs::path(out_dir) / splits[i]).string());
    std::cout << splits[i] << ": " << corpus.utterances.size() << " utterances -> " << (fs::path(out_dir) / splits[i]).string()
              << '\n';
  }
}

void RunLogmel(const std::string& wav_list, const std::string& out_dir, const features::LogmelConfig& cfg) {
  fs::create_directories(fs::path(out_dir) / "feats");
  std::vector<features::FeatureListEntry> scp;
  std::ofstream sides(fs::path(out_dir) / "utt2side");
  for (const auto& e : features::ReadFeatureList(wav_list)) {
    const features::Waveform wave = features::ReadWaveform(e.path);
    const std::string rel = "feats/" + e.utt_id + ".feat";
    features::WriteFeatureFile((fs::path(out_dir) / rel).string(), features::Logmel(wave, cfg).values);
    scp.push_back({e.utt_id, rel});
    sides << e.utt_id << ' ' << (wave.side_id.empty() ? e.utt_id : wave.side_id) << '\n';
  }
  features::WriteFeatureList((fs::path(out_dir) / "feats.scp").string(), scp);
  std::cout << scp.size() << " utterances -> " << out_dir << '\n';
}

void RunApplyPipeline(const std::string& data_dir, const std::string& pipeline_text, const std::string& out_dir) {
  const AmData data = experiment::LoadAmData(data_dir);
  const features::FeaturePipeline pipeline = features::FeaturePipeline::Parse(pipeline_text);
  std::optional<features::LdaTransform> lda;
  const auto states = data.States();
  const auto outputs = features::ApplyPipeline(data.Frames(), data.Sides(), pipeline, &lda,
                                               data.HasAlignments() ? &states : nullptr);
  fs::create_directories(fs::path(out_dir) / "feats");
  std::vector<features::FeatureListEntry> scp;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const std::string rel = "feats/" + data.utterances[i].utt_id + ".feat";
    features::WriteFeatureFile((fs::path(out_dir) / rel).string(), outputs[i]);
    scp.push_back({data.utterances[i].utt_id, rel});
  }
  features::WriteFeatureList((fs::path(out_dir) / "feats.scp").string(), scp);
  for (const char* f : {"utt2side", "ali.txt", "text", "topology.txt"}) {
    if (fs::exists(fs::path(data_dir) / f)) {
      fs::copy_file(fs::path(data_dir) / f, fs::path(out_dir) / f, fs::copy_options::overwrite_existing);
    }
  }
  std::cout << outputs.size() << " utterances, width " << (outputs.empty() ? 0 : outputs[0].cols()) << " -> "
            << out_dir << '\n';
}

void RunTrain(const std::string& config_path) {
  const KvConfig kv = KvConfig::FromFile(config_path);
  const AmData train_data = experiment::LoadAmData(kv.GetString("data.train"));
  std::optional<AmData> heldout;
  if (kv.Has("data.heldout")) heldout = experiment::LoadAmData(kv.GetString("data.heldout"));
  const experiment::AmModelConfig cfg =
      experiment::AmModelConfig::FromKv(kv, "model.", kv.GetString("model.name", "model"));
  const std::string out = ResolveOutputDir(kv.GetString("output_dir"));
  RejectUnusedKeys(kv);

  const experiment::AmTrainResult r = experiment::TrainAcousticModel(cfg, train_data, heldout ? &*heldout : nullptr);
  r.model.Save(out);
  train::WriteHistoryCsv((fs::path(out) / "history.csv").string(), r.history);
  std::cout << "initial loss " << FormatDouble(r.initial_loss) << '\n';
  for (const auto& e : r.history) {
    std::cout << "epoch " << e.epoch << " lr " << FormatDouble(e.learning_rate) << " dropout "
              << FormatDouble(e.dropout_rate) << " loss " << FormatDouble(e.loss) << " acc "
              << FormatDouble(e.frame_accuracy);
    if (e.has_heldout) std::cout << " heldout_acc " << FormatDouble(e.heldout_accuracy);
    std::cout << '\n';
  }
  std::cout << "model -> " << out << '\n';
}

std::vector<double> WeightsOrUniform(const std::vector<double>& w, std::size_t n) {
  return w.empty() ? fusion::UniformWeights(n) : w;
}

void RunFuse(const std::vector<std::string>& model_dirs, const std::vector<double>& weights_in,
             const std::string& data_dir, double kappa, const std::string& hyp_out) {
  const AmData data = experiment::LoadAmData(data_dir);
  std::vector<AcousticModel> models;
  for (const auto& d : model_dirs) models.push_back(AcousticModel::Load(d));
  std::vector<const AcousticModel*> ptrs;
  for (const auto& m : models) ptrs.push_back(&m);
  const auto weights = WeightsOrUniform(weights_in, ptrs.size());
  const auto lp = experiment::FusedStateLogPosteriors(ptrs, data, weights);
  if (data.HasAlignments()) std::cout << "frame accuracy " << FormatDouble(experiment::FrameAccuracy(lp, data)) << '\n';
  const auto r = experiment::DecodeAll(lp, data, ptrs[0]->priors(), kappa);
  if (!hyp_out.empty()) WriteHypotheses(hyp_out, r);
  if (r.wer.reference_words > 0) PrintWer(r.wer);
}

void RunJoint(const std::string& config_path) {
  const KvConfig kv = KvConfig::FromFile(config_path);
  const auto member_dirs = kv.GetList("joint.members");
  std::vector<double> weights;
  if (kv.Has("joint.weights")) weights = kv.GetDoubleList("joint.weights");
  train::TrainConfig tc;
  tc.epochs = static_cast<int>(kv.GetInt("joint.epochs", 3));
  tc.lr0 = kv.GetDouble("joint.lr", 0.2);
  tc.lr_decay = kv.GetDouble("joint.lr_decay", tc.lr_decay);
  tc.minibatch_frames = static_cast<std::size_t>(kv.GetInt("joint.minibatch_frames", 250));
  tc.seed = static_cast<std::uint64_t>(kv.GetInt("joint.seed", 1));
  const std::string out = ResolveOutputDir(kv.GetString("output_dir"));
  const std::string train_dir = kv.GetString("data.train", "");
  const std::string held_dir = kv.GetString("data.heldout", "");
  RejectUnusedKeys(kv);

  std::vector<AcousticModel> members;
  for (const auto& d : member_dirs) members.push_back(AcousticModel::Load(d));
  std::vector<const AcousticModel*> ptrs;
  for (const auto& m : members) ptrs.push_back(&m);
  AcousticModel joint = experiment::BuildJointModel(ptrs, WeightsOrUniform(weights, ptrs.size()));
  std::vector<train::EpochRecord> history;
  if (tc.epochs > 0) {
    if (train_dir.empty()) throw ConfigError("joint retraining needs data.train");
    const AmData train_data = experiment::LoadAmData(train_dir);
    std::optional<AmData> held;
    if (!held_dir.empty()) held = experiment::LoadAmData(held_dir);
    experiment::AmTrainResult r = experiment::RetrainJointModel(joint, train_data, tc, held ? &*held : nullptr);
    std::cout << "initial loss " << FormatDouble(r.initial_loss) << '\n';
    for (const auto& e : r.history) std::cout << "epoch " << e.epoch << " loss " << FormatDouble(e.loss) << '\n';
    joint = std::move(r.model);
    history = std::move(r.history);
  }
  joint.Save(out);
  train::WriteHistoryCsv((fs::path(out) / "history.csv").string(), history);
  std::cout << "joint model -> " << out << '\n';
}

void RunDecode(const std::string& model_dir, const std::string& data_dir, double kappa, const std::string& hyp_out,
               int nbest, const std::string& nbest_out) {
  const AcousticModel model = AcousticModel::Load(model_dir);
  const AmData data = experiment::LoadAmData(data_dir);
  const auto lp = model.StateLogPosteriors(data);
  if (data.HasAlignments()) std::cout << "frame accuracy " << FormatDouble(experiment::FrameAccuracy(lp, data)) << '\n';
  const auto r = experiment::DecodeAll(lp, data, model.priors(), kappa);
  if (!hyp_out.empty()) WriteHypotheses(hyp_out, r);
  if (r.wer.reference_words > 0) PrintWer(r.wer);
  if (!nbest_out.empty()) {
    decode::WriteNBestFile(nbest_out, experiment::MakeNBestLists(lp, data, model.priors(), nbest, kappa));
  }
}

void RunScore(const std::string& ref_path, const std::string& hyp_path) {
  std::map<std::string, std::vector<std::string>> hyps;
  for (auto& [u, w] : features::ReadTranscripts(hyp_path)) hyps[u] = std::move(w);
  decode::WerReport total;
  for (const auto& [u, ref] : features::ReadTranscripts(ref_path)) {
    const auto it = hyps.find(u);
    total += decode::Wer(ref, it == hyps.end() ? std::vector<std::string>{} : it->second);
  }
  PrintWer(total);
}

}  // namespace

void AddAmCommands(CLI::App& app) {
  {
    auto* cmd = app.add_subcommand("synth", "generate a synthetic corpus (train/dev/test splits)");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("data");
    cmd->add_option("--config", *config, "key-value config with corpus.* keys");
    cmd->add_option("--out", *out, "output directory");
    cmd->callback([=] { RunSynth(*config, *out); });
  }
  {
    auto* cmd = app.add_subcommand("features", "feature extraction and transforms");
    cmd->require_subcommand(1);
    auto* logmel = cmd->add_subcommand("logmel", "40-filter logmel from a waveform list");
    auto list = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto lcfg = std::make_shared<features::LogmelConfig>();
    logmel->add_option("--waveforms", *list, "list of 'utt path' lines (raw int16 PCM)")->required();
    logmel->add_option("--out", *out, "output data directory")->required();
    logmel->add_option("--num-filters", lcfg->num_filters, "mel filters");
    logmel->callback([=] { RunLogmel(*list, ResolveOutputDir(*out), *lcfg); });

    auto* apply = cmd->add_subcommand("apply", "run a pipeline (cmvn, lda:k, deltas, splice:k, ...) on a data dir");
    auto in = std::make_shared<std::string>();
    auto pipeline = std::make_shared<std::string>();
    auto out2 = std::make_shared<std::string>();
    apply->add_option("--data", *in, "input data directory")->required();
    apply->add_option("--pipeline", *pipeline, "e.g. cmvn,deltas,splice:4")->required();
    apply->add_option("--out", *out2, "output data directory")->required();
    apply->callback([=] { RunApplyPipeline(*in, *pipeline, ResolveOutputDir(*out2)); });
  }
  {
    auto* cmd = app.add_subcommand("train", "train an acoustic model from a key-value config");
    auto config = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "config with data.*, model.* and output_dir")->required();
    cmd->callback([=] { RunTrain(*config); });
  }
  {
    auto* cmd = app.add_subcommand("fuse", "frame-level score fusion of trained models");
    auto models = std::make_shared<std::vector<std::string>>();
    auto weights = std::make_shared<std::vector<double>>();
    auto data = std::make_shared<std::string>();
    auto kappa = std::make_shared<double>(1.0);
    auto hyp = std::make_shared<std::string>();
    cmd->add_option("--model", *models, "model directory (repeat)")->required();
    cmd->add_option("--weights", *weights, "fusion weights (default uniform)")->delimiter(',');
    cmd->add_option("--data", *data, "data directory")->required();
    cmd->add_option("--acoustic-scale", *kappa, "acoustic scale");
    cmd->add_option("--hyp", *hyp, "write hypotheses here");
    cmd->callback([=] { RunFuse(*models, *weights, *data, *kappa, *hyp); });
  }
  {
    auto* cmd = app.add_subcommand("joint", "build (and optionally retrain) a joint model");
    auto config = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "config with joint.*, data.* and output_dir")->required();
    cmd->callback([=] { RunJoint(*config); });
  }
  {
    auto* cmd = app.add_subcommand("decode", "hybrid Viterbi decoding");
    auto model = std::make_shared<std::string>();
    auto data = std::make_shared<std::string>();
    auto kappa = std::make_shared<double>(1.0);
    auto hyp = std::make_shared<std::string>();
    auto n = std::make_shared<int>(20);
    auto nbest = std::make_shared<std::string>();
    cmd->add_option("--model", *model, "model directory")->required();
    cmd->add_option("--data", *data, "data directory")->required();
    cmd->add_option("--acoustic-scale", *kappa, "acoustic scale");
    cmd->add_option("--hyp", *hyp, "write hypotheses here");
    cmd->add_option("--nbest", *n, "N-best size");
    cmd->add_option("--nbest-out", *nbest, "write N-best lists here");
    cmd->callback([=] { RunDecode(*model, *data, *kappa, *hyp, *n, *nbest); });
  }
  {
    auto* cmd = app.add_subcommand("score", "word error rate of hypotheses against references");
    auto ref = std::make_shared<std::string>();
    auto hyp = std::make_shared<std::string>();
    cmd->add_option("--ref", *ref, "reference transcripts")->required();
    cmd->add_option("--hyp", *hyp, "hypothesis transcripts")->required();
    cmd->callback([=] { RunScore(*ref, *hyp); });
  }
}

}  // namespace hasr::tools
