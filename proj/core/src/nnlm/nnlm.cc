// core/src/nnlm/nnlm.cc

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

#include "hasr/nnlm/nnlm.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "hasr/common/binary_io.h"
#include "hasr/common/errors.h"
#include "hasr/common/random.h"
#include "hasr/nn/layers.h"

namespace hasr::nnlm {
namespace {

constexpr std::uint32_t kVersion = 1;

Matrix UniformInit(Eigen::Index rows, Eigen::Index cols, double limit, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = UniformReal(rng, -limit, limit);
  return m;
}

std::vector<StateId> OutputTargets(const ContextBatch& batch) {
  std::vector<StateId> out(batch.targets.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = batch.targets[i] - 1;
  return out;
}

}  // namespace

void NnlmConfig::Validate() const {
  if (history < 1) throw ConfigError("nnlm history must be >= 1");
  if (embedding_dim < 1 || hidden_dim < 1) throw ConfigError("nnlm dimensions must be positive");
  if (epochs < 0) throw ConfigError("nnlm epochs must be >= 0");
  if (minibatch < 1) throw ConfigError("nnlm minibatch must be >= 1");
  if (!(lr0 >= 0) || !(lr_decay > 0)) throw ConfigError("nnlm learning rate settings are invalid");
}

NnlmConfig NnlmConfig::FromKv(const KvConfig& kv, const std::string& prefix) {
  NnlmConfig c;
  c.history = static_cast<int>(kv.GetInt(prefix + "history", c.history));
  c.embedding_dim = static_cast<int>(kv.GetInt(prefix + "embedding_dim", c.embedding_dim));
  c.hidden_dim = static_cast<int>(kv.GetInt(prefix + "hidden_dim", c.hidden_dim));
  c.epochs = static_cast<int>(kv.GetInt(prefix + "epochs", c.epochs));
  c.lr0 = kv.GetDouble(prefix + "lr", c.lr0);
  c.lr_decay = kv.GetDouble(prefix + "lr_decay", c.lr_decay);
  c.minibatch = static_cast<std::size_t>(kv.GetInt(prefix + "minibatch", static_cast<std::int64_t>(c.minibatch)));
  c.seed = static_cast<std::uint64_t>(kv.GetInt(prefix + "seed", static_cast<std::int64_t>(c.seed)));
  c.Validate();
  return c;
}

ContextDataset::ContextDataset(const lm::Corpus& corpus, const lm::Vocabulary& vocab, int history)
    : history_(history) {
  if (history < 1) throw ConfigError("nnlm history must be >= 1");
  std::vector<WordId> window;
  for (const auto& sentence : corpus) {
    window.assign(history, lm::Vocabulary::kBos);
    auto emit = [&](WordId target) {
      contexts_.insert(contexts_.end(), window.begin(), window.end());
      targets_.push_back(target);
      window.erase(window.begin());
      window.push_back(target);
    };
    for (const auto& w : sentence) emit(vocab.Lookup(w));
    emit(lm::Vocabulary::kEos);
  }
  if (targets_.empty()) throw DataError("nnlm training corpus is empty");
}

ContextBatch ContextDataset::MakeBatch(std::span<const std::size_t> indices) const {
  ContextBatch b;
  b.contexts.reserve(indices.size() * history_);
  b.targets.reserve(indices.size());
  for (std::size_t i : indices) {
    b.contexts.insert(b.contexts.end(), contexts_.begin() + i * history_, contexts_.begin() + (i + 1) * history_);
    b.targets.push_back(targets_[i]);
  }
  return b;
}

ContextBatch ContextDataset::All() const { return {contexts_, targets_}; }

NnlmModel::NnlmModel(lm::Vocabulary vocab, const NnlmConfig& config)
    : vocab_(std::move(vocab)), history_(config.history) {
  config.Validate();
  Rng rng(train::InitSeed(config.seed));
  const int V = vocab_.size(), e = config.embedding_dim, H = config.hidden_dim;
  const int in = history_ * e;
  embed_ = UniformInit(V, e, 0.1, rng);
  w_hidden_ = UniformInit(in, H, std::sqrt(6.0 / (in + H)), rng);
  b_hidden_ = Vector::Zero(H);
  w_out_ = UniformInit(H, V - 1, std::sqrt(6.0 / (H + V - 1)), rng);
  b_out_ = Vector::Zero(V - 1);
}

NnlmModel::Activations NnlmModel::Forward(const ContextBatch& batch) const {
  const Eigen::Index B = static_cast<Eigen::Index>(batch.size());
  const Eigen::Index e = embed_.cols();
  if (batch.contexts.size() != batch.targets.size() * history_) throw ShapeError("nnlm batch has ragged contexts");
  Activations a;
  a.input.resize(B, history_ * e);
  for (Eigen::Index r = 0; r < B; ++r) {
    for (int j = 0; j < history_; ++j) {
      const WordId id = batch.contexts[r * history_ + j];
      if (id < 0 || id >= vocab_.size()) throw DataError("nnlm context id " + std::to_string(id) + " out of range");
      a.input.block(r, j * e, 1, e) = embed_.row(id);
    }
  }
  a.hidden = ((a.input * w_hidden_).rowwise() + b_hidden_.transpose()).unaryExpr([](double x) { return nn::Sigmoid(x); });
  a.log_posteriors = nn::LogSoftmaxRows((a.hidden * w_out_).rowwise() + b_out_.transpose());
  return a;
}

Matrix NnlmModel::LogPosteriors(const ContextBatch& batch) const { return Forward(batch).log_posteriors; }

double NnlmModel::LogProb(std::span<const WordId> history, WordId word) const {
  if (word == lm::Vocabulary::kBos) return -std::numeric_limits<double>::infinity();
  if (word < 0 || word >= vocab_.size()) throw DataError("nnlm word id out of range");
  ContextBatch b;
  b.contexts.assign(history_, lm::Vocabulary::kBos);
  const std::size_t take = std::min<std::size_t>(history_, history.size());
  std::copy(history.end() - take, history.end(), b.contexts.end() - take);
  b.targets.push_back(word);
  return Forward(b).log_posteriors(0, word - 1);
}

nn::StepStats NnlmModel::Evaluate(const ContextBatch& batch) const {
  return nn::ScoreLogPosteriors(Forward(batch).log_posteriors, OutputTargets(batch));
}

nn::StepStats NnlmModel::TrainStep(const ContextBatch& batch, double lr, nn::DropoutState) {
  const Activations a = Forward(batch);
  const std::vector<StateId> targets = OutputTargets(batch);
  const nn::StepStats stats = nn::ScoreLogPosteriors(a.log_posteriors, targets);
  const double B = static_cast<double>(batch.size());

  Matrix g = a.log_posteriors.array().exp();
  for (std::size_t r = 0; r < targets.size(); ++r) g(r, targets[r]) -= 1.0;
  g /= B;
  const Matrix g_hidden = ((g * w_out_.transpose()).array() * a.hidden.array() * (1.0 - a.hidden.array())).matrix();
  const Matrix g_input = g_hidden * w_hidden_.transpose();

  w_out_.noalias() -= lr * a.hidden.transpose() * g;
  b_out_ -= lr * g.colwise().sum().transpose();
  w_hidden_.noalias() -= lr * a.input.transpose() * g_hidden;
  b_hidden_ -= lr * g_hidden.colwise().sum().transpose();
  const Eigen::Index e = embed_.cols();
  for (std::size_t r = 0; r < batch.size(); ++r) {
    for (int j = 0; j < history_; ++j) {
      embed_.row(batch.contexts[r * history_ + j]) -= lr * g_input.block(r, j * e, 1, e);
    }
  }
  return stats;
}

void NnlmModel::Write(std::ostream& os) const {
  io::WriteMagic(os, "NNLM");
  io::WriteU32(os, kVersion);
  io::WriteU32(os, static_cast<std::uint32_t>(history_));
  io::WriteU32(os, static_cast<std::uint32_t>(vocab_.size()));
  for (const auto& w : vocab_.words()) {
    io::WriteU32(os, static_cast<std::uint32_t>(w.size()));
    os.write(w.data(), static_cast<std::streamsize>(w.size()));
  }
  io::WriteMatrix(os, embed_);
  io::WriteMatrix(os, w_hidden_);
  io::WriteVector(os, b_hidden_);
  io::WriteMatrix(os, w_out_);
  io::WriteVector(os, b_out_);
}

NnlmModel NnlmModel::Read(std::istream& is) {
  io::ExpectMagic(is, "NNLM", "neural LM");
  if (const std::uint32_t v = io::ReadU32(is); v != kVersion) {
    throw ParseError("unsupported neural LM version " + std::to_string(v));
  }
  NnlmModel m;
  m.history_ = static_cast<int>(io::ReadU32(is));
  const std::uint32_t n = io::ReadU32(is);
  std::vector<std::string> words;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string w(io::ReadU32(is), '\0');
    is.read(w.data(), static_cast<std::streamsize>(w.size()));
    if (!is) throw ParseError("neural LM vocabulary is truncated");
    words.push_back(std::move(w));
  }
  if (n < 3 || words[0] != lm::kBosWord || words[1] != lm::kEosWord || words[2] != lm::kUnkWord) {
    throw ParseError("neural LM vocabulary lacks the <s> </s> <unk> prefix");
  }
  m.vocab_ = lm::Vocabulary::FromWords(std::vector<std::string>(words.begin() + 3, words.end()));
  m.embed_ = io::ReadMatrix(is);
  m.w_hidden_ = io::ReadMatrix(is);
  m.b_hidden_ = io::ReadVector(is);
  m.w_out_ = io::ReadMatrix(is);
  m.b_out_ = io::ReadVector(is);
  const Eigen::Index V = m.vocab_.size();
  if (m.history_ < 1 || m.embed_.rows() != V || m.w_hidden_.rows() != m.history_ * m.embed_.cols() ||
      m.b_hidden_.size() != m.w_hidden_.cols() || m.w_out_.rows() != m.w_hidden_.cols() ||
      m.w_out_.cols() != V - 1 || m.b_out_.size() != V - 1) {
    throw ParseError("neural LM parameter shapes are inconsistent");
  }
  return m;
}

void NnlmModel::Save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  Write(os);
  if (!os) throw IoError("failed writing '" + path + "'");
}

NnlmModel NnlmModel::Load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open neural LM '" + path + "'");
  return Read(is);
}

bool NnlmModel::operator==(const NnlmModel& o) const {
  return vocab_ == o.vocab_ && history_ == o.history_ && embed_ == o.embed_ && w_hidden_ == o.w_hidden_ &&
         b_hidden_ == o.b_hidden_ && w_out_ == o.w_out_ && b_out_ == o.b_out_;
}

NnlmTrainResult TrainNnlm(const lm::Corpus& corpus, const lm::Vocabulary& vocab, const NnlmConfig& config,
                          const lm::Corpus* heldout) {
  config.Validate();
  const ContextDataset data(corpus, vocab, config.history);
  std::optional<ContextDataset> held;
  if (heldout != nullptr && !heldout->empty()) held.emplace(*heldout, vocab, config.history);

  train::TrainConfig tc;
  tc.epochs = config.epochs;
  tc.minibatch_frames = config.minibatch;
  tc.lr0 = config.lr0;
  tc.lr_decay = config.lr_decay;
  tc.seed = config.seed;
  tc.dropout = {0.0, 1};

  NnlmTrainResult result;
  result.model = NnlmModel(vocab, config);
  result.initial_loss = train::EvaluateDataset(result.model, data).MeanLoss();
  result.history = train::RunEpochs(result.model, data, tc, held ? &*held : nullptr);
  return result;
}

}  // namespace hasr::nnlm
