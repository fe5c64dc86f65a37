// core/src/experiment/acoustic_model.cc

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

#include "hasr/experiment/acoustic_model.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hasr/common/binary_io.h"
#include "hasr/common/errors.h"
#include "hasr/decode/synth.h"
#include "hasr/decode/viterbi.h"
#include "hasr/fusion/score_fusion.h"
#include "hasr/nn/serialization.h"
#include "hasr/train/dataset.h"

namespace hasr::experiment {
namespace fs = std::filesystem;
namespace {

nn::Nonlinearity ParseNonlinearity(const std::string& s) {
  if (s == "sigmoid") return nn::Nonlinearity::kSigmoid;
  if (s == "relu") return nn::Nonlinearity::kRelu;
  if (s == "maxout") return nn::Nonlinearity::kMaxout;
  throw ConfigError("unknown nonlinearity '" + s + "' (expected sigmoid, relu or maxout)");
}

std::string DefaultPipeline(const std::string& arch) {
  if (arch == "cnn") return "cmvn,deltas,cnn:2";
  if (arch == "rnn") return "cmvn,window:4";
  return "cmvn,splice:4";
}

void WriteLda(const std::string& path, const features::LdaTransform& lda) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");
  io::WriteMagic(os, "LDAT");
  io::WriteMatrix(os, lda.projection);
  io::WriteVector(os, lda.eigenvalues);
  io::WriteU32(os, static_cast<std::uint32_t>(lda.num_classes));
}

features::LdaTransform ReadLda(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  io::ExpectMagic(is, "LDAT", "LDA transform");
  features::LdaTransform lda;
  lda.projection = io::ReadMatrix(is);
  lda.eigenvalues = io::ReadVector(is);
  lda.num_classes = static_cast<int>(io::ReadU32(is));
  return lda;
}

}  // namespace

// ---- configuration ---------------------------------------------------------

AmModelConfig AmModelConfig::FromKv(const KvConfig& kv, const std::string& prefix, const std::string& name) {
  AmModelConfig c;
  c.name = name;
  auto key = [&](const char* k) { return prefix + k; };
  c.arch = kv.GetString(key("arch"), c.arch);
  c.nonlinearity = ParseNonlinearity(kv.GetString(key("nonlinearity"), "sigmoid"));
  if (kv.Has(key("hidden"))) {
    c.hidden.clear();
    for (auto v : kv.GetIntList(key("hidden"))) c.hidden.push_back(static_cast<int>(v));
  } else if (c.arch != "dnn") {
    c.hidden.clear();
  }
  c.equalize_maxout = kv.GetBool(key("equalize_maxout"), c.equalize_maxout);
  c.group_size = static_cast<int>(kv.GetInt(key("group_size"), c.group_size));
  c.bottleneck = static_cast<int>(kv.GetInt(key("bottleneck"), c.bottleneck));
  c.contexts = static_cast<int>(kv.GetInt(key("contexts"), c.contexts));
  c.pipeline = kv.GetString(key("pipeline"), DefaultPipeline(c.arch));
  c.layers = kv.GetString(key("layers"), c.layers);
  c.conv1_filters = static_cast<int>(kv.GetInt(key("conv1_filters"), c.conv1_filters));
  c.conv1_window_h = static_cast<int>(kv.GetInt(key("conv1_window_h"), c.conv1_window_h));
  c.conv1_window_w = static_cast<int>(kv.GetInt(key("conv1_window_w"), c.conv1_window_w));
  c.pool_h = static_cast<int>(kv.GetInt(key("pool_h"), c.pool_h));
  c.pool_w = static_cast<int>(kv.GetInt(key("pool_w"), c.pool_w));
  c.conv2_filters = static_cast<int>(kv.GetInt(key("conv2_filters"), c.conv2_filters));
  c.conv2_window_h = static_cast<int>(kv.GetInt(key("conv2_window_h"), c.conv2_window_h));
  c.conv2_window_w = static_cast<int>(kv.GetInt(key("conv2_window_w"), c.conv2_window_w));
  c.recurrent_dim = static_cast<int>(kv.GetInt(key("recurrent_dim"), c.recurrent_dim));

  c.train.epochs = static_cast<int>(kv.GetInt(key("epochs"), c.train.epochs));
  c.train.minibatch_frames =
      static_cast<std::size_t>(kv.GetInt(key("minibatch_frames"), static_cast<std::int64_t>(c.train.minibatch_frames)));
  c.train.lr0 = kv.GetDouble(key("lr"), c.train.lr0);
  c.train.lr_decay = kv.GetDouble(key("lr_decay"), c.train.lr_decay);
  c.train.seed = static_cast<std::uint64_t>(kv.GetInt(key("seed"), static_cast<std::int64_t>(c.train.seed)));
  c.train.dropout.p0 = kv.GetDouble(key("dropout_p0"), 0.0);
  c.train.dropout.end_epoch = static_cast<int>(
      kv.GetInt(key("dropout_end_epoch"), train::DefaultDropoutEndEpoch(c.train.epochs)));
  c.pretrain_epochs = static_cast<int>(kv.GetInt(key("pretrain_epochs"), c.pretrain_epochs));
  c.Validate();
  return c;
}

void AmModelConfig::Validate() const {
  if (arch != "dnn" && arch != "cnn" && arch != "rnn" && arch != "layers") {
    throw ConfigError("model '" + name + "': unknown arch '" + arch + "' (expected dnn, cnn, rnn or layers)");
  }
  if (contexts < 1) throw ConfigError("model '" + name + "': contexts must be >= 1");
  if (bottleneck < 0) throw ConfigError("model '" + name + "': bottleneck must be >= 0");
  if (pretrain_epochs < 0) throw ConfigError("model '" + name + "': pretrain_epochs must be >= 0");
  if (arch == "layers" && layers.empty()) throw ConfigError("model '" + name + "': arch=layers needs 'layers'");
  train.dropout.Validate();
  if (train.epochs < 0 || train.minibatch_frames < 1 || !(train.lr0 >= 0)) {
    throw ConfigError("model '" + name + "': invalid training settings");
  }
  features::FeaturePipeline::Parse(pipeline);
}

nn::NetworkSpec AmModelConfig::BuildSpec(int raw_dim, int num_states) const {
  Validate();
  const features::FeaturePipeline p = features::FeaturePipeline::Parse(pipeline);
  const int frame_dim = p.FrameDim(raw_dim);
  const int outputs = num_states * contexts;
  std::vector<int> widths = hidden;
  if (nonlinearity == nn::Nonlinearity::kMaxout && equalize_maxout) {
    for (int& w : widths) w = nn::EqualizedMaxoutWidth(w, group_size);
  }
  using Kind = features::InputTransform::Kind;
  if (arch == "dnn") {
    return nn::BuildFeedForward(p.InputDim(raw_dim), widths, nonlinearity, bottleneck, outputs, group_size);
  }
  if (arch == "cnn") {
    if (p.input.kind != Kind::kCnn) throw ConfigError("model '" + name + "': cnn needs a cnn:k input transform");
    nn::CnnConfig c;
    c.input = p.input.CnnGeometry(frame_dim);
    c.conv1_filters = conv1_filters;
    c.conv1_window_h = conv1_window_h;
    c.conv1_window_w = conv1_window_w;
    c.pool_h = pool_h;
    c.pool_w = pool_w;
    c.conv2_filters = conv2_filters;
    c.conv2_window_h = conv2_window_h;
    c.conv2_window_w = conv2_window_w;
    c.hidden = widths;
    c.nl = nonlinearity;
    c.group_size = group_size;
    c.bottleneck = bottleneck;
    c.num_outputs = outputs;
    return nn::BuildCnn(c);
  }
  if (arch == "rnn") {
    if (p.input.kind != Kind::kWindow) throw ConfigError("model '" + name + "': rnn needs a window:s input transform");
    nn::RnnConfig c;
    c.frame_dim = frame_dim;
    c.steps = p.input.context;
    c.recurrent_dim = recurrent_dim;
    c.hidden = widths;
    c.bottleneck = bottleneck;
    c.num_outputs = outputs;
    return nn::BuildUnfoldedRnn(c);
  }
  std::optional<nn::Geometry> geometry;
  if (p.input.kind == Kind::kCnn) geometry = p.input.CnnGeometry(frame_dim);
  const int fd = p.input.kind == Kind::kWindow ? frame_dim : 0;
  nn::NetworkSpec spec = nn::ParseLayerString(layers, p.InputDim(raw_dim), geometry, fd);
  if (spec.output_dim() != outputs) {
    throw ConfigError("model '" + name + "': layer string ends in " + std::to_string(spec.output_dim()) +
                      " outputs but the inventory has " + std::to_string(outputs));
  }
  return spec;
}

// ---- model bundle ----------------------------------------------------------

AcousticModel::AcousticModel(nn::Network network, features::FeaturePipeline pipeline,
                             std::optional<features::LdaTransform> lda, decode::PriorVector priors, int contexts)
    : network_(std::move(network)), pipelines_{std::move(pipeline)}, ldas_{std::move(lda)},
      priors_(std::move(priors)), contexts_(contexts) {
  priors_.Validate();
  if (network_->num_outputs() != num_states() * contexts_) {
    throw ShapeError("network has " + std::to_string(network_->num_outputs()) + " outputs, expected " +
                     std::to_string(num_states() * contexts_));
  }
}

AcousticModel::AcousticModel(fusion::JointModel joint, std::vector<features::FeaturePipeline> pipelines,
                             std::vector<std::optional<features::LdaTransform>> ldas, decode::PriorVector priors,
                             int contexts)
    : joint_(std::move(joint)), pipelines_(std::move(pipelines)), ldas_(std::move(ldas)),
      priors_(std::move(priors)), contexts_(contexts) {
  priors_.Validate();
  if (pipelines_.size() != joint_->branches().size() || ldas_.size() != pipelines_.size()) {
    throw ShapeError("joint model needs one pipeline per branch");
  }
  if (joint_->num_outputs() != num_states() * contexts_) throw ShapeError("joint output count mismatch");
}

const nn::Network& AcousticModel::network() const {
  if (!network_) throw LogicError("acoustic model is a joint model");
  return *network_;
}

const fusion::JointModel& AcousticModel::joint() const {
  if (!joint_) throw LogicError("acoustic model is a single network");
  return *joint_;
}

std::size_t AcousticModel::NumParams() const {
  if (network_) return nn::CountParams(network_->spec());
  std::size_t n = static_cast<std::size_t>(joint_->output_weights().size() + joint_->output_bias().size());
  for (const auto& b : joint_->branches()) n += nn::CountParams(b.stack);
  return n;
}

std::vector<Matrix> AcousticModel::Inputs(const AmData& data) const {
  const auto frames = data.Frames();
  const auto sides = data.Sides();
  std::vector<std::vector<Matrix>> per_branch;
  for (std::size_t b = 0; b < pipelines_.size(); ++b) {
    std::optional<features::LdaTransform> lda = ldas_[b];
    if (pipelines_[b].lda_dim > 0 && !lda) throw ConfigError("pipeline uses LDA but the model has no transform");
    per_branch.push_back(features::ApplyPipeline(frames, sides, pipelines_[b], &lda));
  }
  if (per_branch.size() == 1) return per_branch[0];
  std::vector<Matrix> out;
  for (std::size_t u = 0; u < frames.size(); ++u) {
    std::vector<Matrix> parts;
    for (auto& pb : per_branch) parts.push_back(std::move(pb[u]));
    out.push_back(fusion::JointInput(parts));
  }
  return out;
}

std::vector<Matrix> AcousticModel::Logits(const AmData& data) const {
  std::vector<Matrix> out;
  for (const Matrix& x : Inputs(data)) out.push_back(network_ ? network_->Logits(x) : joint_->Logits(x));
  return out;
}

std::vector<Matrix> AcousticModel::StateLogPosteriors(const AmData& data) const {
  std::vector<Matrix> out;
  for (const Matrix& z : Logits(data)) {
    out.push_back(CollapseContexts(nn::LogSoftmaxRows(z), num_states(), contexts_));
  }
  return out;
}

void AcousticModel::Save(const std::string& dir) const {
  fs::create_directories(dir);
  const fs::path root(dir);
  std::ofstream conf(root / "am.conf");
  if (!conf) throw IoError("cannot write '" + (root / "am.conf").string() + "'");
  conf << "kind = " << (network_ ? "network" : "joint") << "\n";
  conf << "contexts = " << contexts_ << "\n";
  conf << "branches = " << pipelines_.size() << "\n";
  for (std::size_t b = 0; b < pipelines_.size(); ++b) {
    conf << "pipeline." << b << " = " << pipelines_[b].ToString() << "\n";
    if (ldas_[b]) {
      const std::string name = "lda." + std::to_string(b) + ".bin";
      WriteLda((root / name).string(), *ldas_[b]);
      conf << "lda." << b << " = " << name << "\n";
    }
  }
  if (!conf) throw IoError("failed writing '" + (root / "am.conf").string() + "'");
  decode::WritePriors((root / "priors.txt").string(), priors_);
  if (network_) {
    nn::SaveNetwork((root / "final.nnet").string(), *network_);
  } else {
    joint_->Save((root / "final.jnet").string());
  }
}

AcousticModel AcousticModel::Load(const std::string& dir) {
  const fs::path root(dir);
  const KvConfig conf = KvConfig::FromFile((root / "am.conf").string());
  const std::string kind = conf.GetString("kind");
  const int contexts = static_cast<int>(conf.GetInt("contexts"));
  const int branches = static_cast<int>(conf.GetInt("branches"));
  std::vector<features::FeaturePipeline> pipelines;
  std::vector<std::optional<features::LdaTransform>> ldas;
  for (int b = 0; b < branches; ++b) {
    pipelines.push_back(features::FeaturePipeline::Parse(conf.GetString("pipeline." + std::to_string(b))));
    const std::string lda_key = "lda." + std::to_string(b);
    if (conf.Has(lda_key)) {
      ldas.emplace_back(ReadLda((root / conf.GetString(lda_key)).string()));
    } else {
      ldas.emplace_back();
    }
  }
  decode::PriorVector priors = decode::ReadPriors((root / "priors.txt").string());
  if (kind == "network") {
    if (branches != 1) throw ParseError(dir + ": a network model has exactly one pipeline");
    return AcousticModel(nn::LoadNetwork((root / "final.nnet").string()), pipelines[0], ldas[0], std::move(priors),
                         contexts);
  }
  if (kind == "joint") {
    return AcousticModel(fusion::JointModel::Load((root / "final.jnet").string()), std::move(pipelines),
                         std::move(ldas), std::move(priors), contexts);
  }
  throw ParseError(dir + "/am.conf: unknown kind '" + kind + "'");
}

// ---- helpers ---------------------------------------------------------------

Matrix CollapseContexts(const Matrix& lp, int num_states, int contexts) {
  if (lp.cols() != static_cast<Eigen::Index>(num_states) * contexts) {
    throw ShapeError("posterior width " + std::to_string(lp.cols()) + " is not states x contexts");
  }
  if (contexts == 1) return lp;
  Matrix out(lp.rows(), num_states);
  for (Eigen::Index t = 0; t < lp.rows(); ++t) {
    for (int s = 0; s < num_states; ++s) {
      double m = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < contexts; ++c) m = std::max(m, lp(t, s + num_states * c));
      double sum = 0.0;
      for (int c = 0; c < contexts; ++c) sum += std::exp(lp(t, s + num_states * c) - m);
      out(t, s) = m + std::log(sum);
    }
  }
  return out;
}

std::vector<std::vector<StateId>> OutputTargets(const AmData& data, int contexts) {
  if (!data.HasAlignments()) throw DataError("training data has no alignments");
  std::vector<std::vector<StateId>> out;
  for (const auto& u : data.utterances) out.push_back(decode::ContextTargets(u.states, data.topology, contexts));
  return out;
}

AmTrainResult TrainAcousticModel(const AmModelConfig& config, const AmData& train_data, const AmData* heldout) {
  config.Validate();
  const features::FeaturePipeline pipeline = features::FeaturePipeline::Parse(config.pipeline);
  const int S = train_data.topology.num_states();
  std::optional<features::LdaTransform> lda;
  const auto states = train_data.States();
  const train::FrameDataset train_set = train::FrameDataset::FromUtterances(
      features::ApplyPipeline(train_data.Frames(), train_data.Sides(), pipeline, &lda, &states),
      OutputTargets(train_data, config.contexts));
  std::optional<train::FrameDataset> held_set;
  if (heldout != nullptr && heldout->HasAlignments()) {
    std::optional<features::LdaTransform> lda_copy = lda;
    held_set.emplace(train::FrameDataset::FromUtterances(
        features::ApplyPipeline(heldout->Frames(), heldout->Sides(), pipeline, &lda_copy),
        OutputTargets(*heldout, config.contexts)));
  }
  const nn::NetworkSpec spec = config.BuildSpec(train_data.FeatureDim(), S);
  train::TrainResult tr =
      train::TrainNetwork(spec, train_set, held_set ? &*held_set : nullptr, config.train, config.pretrain_epochs);
  AmTrainResult out;
  out.model = AcousticModel(std::move(tr.network), pipeline, std::move(lda),
                            decode::EstimatePriors(states, S), config.contexts);
  out.history = std::move(tr.history);
  out.initial_loss = tr.initial_loss;
  return out;
}

double FrameAccuracy(const std::vector<Matrix>& lp, const AmData& data) {
  if (lp.size() != data.utterances.size()) throw ShapeError("need one posterior matrix per utterance");
  std::size_t correct = 0, total = 0;
  for (std::size_t u = 0; u < lp.size(); ++u) {
    const auto& states = data.utterances[u].states;
    if (states.size() != static_cast<std::size_t>(lp[u].rows())) {
      throw DataError("utterance '" + data.utterances[u].utt_id + "' lacks a matching alignment");
    }
    for (Eigen::Index t = 0; t < lp[u].rows(); ++t) {
      Eigen::Index best;
      lp[u].row(t).maxCoeff(&best);
      correct += best == states[t];
    }
    total += states.size();
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

DecodeReport DecodeAll(const std::vector<Matrix>& lp, const AmData& data, const decode::PriorVector& priors,
                       double kappa) {
  if (lp.size() != data.utterances.size()) throw ShapeError("need one posterior matrix per utterance");
  DecodeReport r;
  for (std::size_t u = 0; u < lp.size(); ++u) {
    const decode::DecodeResult d = decode::ViterbiDecode(decode::AcousticScores(lp[u], priors, kappa), data.topology);
    r.hypotheses.emplace_back(data.utterances[u].utt_id, decode::WordNames(data.topology, d.words));
    if (!data.utterances[u].words.empty()) r.wer += decode::Wer(data.utterances[u].words, r.hypotheses.back().second);
  }
  return r;
}

std::vector<decode::NBestList> MakeNBestLists(const std::vector<Matrix>& lp, const AmData& data,
                                              const decode::PriorVector& priors, int n, double kappa) {
  std::vector<decode::NBestList> out;
  for (std::size_t u = 0; u < lp.size(); ++u) {
    out.push_back(decode::GenerateNBest(data.utterances[u].utt_id, decode::AcousticScores(lp[u], priors, kappa),
                                        data.topology, n));
  }
  return out;
}

std::vector<Matrix> FusedStateLogPosteriors(const std::vector<const AcousticModel*>& members, const AmData& data,
                                            const std::vector<double>& weights) {
  fusion::ValidateFusionWeights(weights, members.size());
  std::vector<std::vector<Matrix>> logits;
  for (const auto* m : members) {
    if (m->num_states() != members[0]->num_states() || m->contexts() != members[0]->contexts()) {
      throw ConfigError("fused models must share their output inventory");
    }
    logits.push_back(m->Logits(data));
  }
  std::vector<Matrix> out;
  for (std::size_t u = 0; u < data.utterances.size(); ++u) {
    std::vector<Matrix> z;
    for (auto& l : logits) z.push_back(std::move(l[u]));
    out.push_back(CollapseContexts(nn::LogSoftmaxRows(fusion::ScoreFuse(z, weights)), members[0]->num_states(),
                                   members[0]->contexts()));
  }
  return out;
}

AcousticModel BuildJointModel(const std::vector<const AcousticModel*>& members, const std::vector<double>& weights) {
  std::vector<const nn::Network*> nets;
  std::vector<std::string> tags;
  std::vector<features::FeaturePipeline> pipelines;
  std::vector<std::optional<features::LdaTransform>> ldas;
  for (const auto* m : members) {
    if (m->is_joint()) throw ConfigError("joint members must be single networks");
    if (m->contexts() != members[0]->contexts() || m->num_states() != members[0]->num_states()) {
      throw ConfigError("joint members must share their output inventory");
    }
    nets.push_back(&m->network());
    pipelines.push_back(m->pipelines()[0]);
    tags.push_back(pipelines.back().ToString());
    ldas.push_back(m->ldas()[0]);
  }
  return AcousticModel(fusion::BuildJoint(nets, weights, tags), std::move(pipelines), std::move(ldas),
                       members[0]->priors(), members[0]->contexts());
}

AmTrainResult RetrainJointModel(const AcousticModel& joint, const AmData& train_data, const train::TrainConfig& config,
                                const AmData* heldout) {
  const train::FrameDataset train_set =
      train::FrameDataset::FromUtterances(joint.Inputs(train_data), OutputTargets(train_data, joint.contexts()));
  std::optional<train::FrameDataset> held_set;
  if (heldout != nullptr && heldout->HasAlignments()) {
    held_set.emplace(
        train::FrameDataset::FromUtterances(joint.Inputs(*heldout), OutputTargets(*heldout, joint.contexts())));
  }
  fusion::JointTrainResult r =
      fusion::RetrainJoint(joint.joint(), train_set, config, held_set ? &*held_set : nullptr);
  AmTrainResult out;
  out.model = AcousticModel(std::move(r.model), joint.pipelines(), joint.ldas(), joint.priors(), joint.contexts());
  out.history = std::move(r.history);
  out.initial_loss = r.initial_loss;
  return out;
}

}  // namespace hasr::experiment
