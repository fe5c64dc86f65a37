// tests/unit/nnlm_test.cc

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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hasr/common/errors.h"
#include "hasr/lm/counts.h"
#include "hasr/lm/kneser_ney.h"
#include "hasr/nnlm/nnlm.h"
#include "hasr/nnlm/rescore.h"
#include "lm_toys.h"
#include "test_util.h"

namespace hasr::nnlm {
namespace {

using testing::ToyCorpus;

NnlmConfig SmallConfig() {
  NnlmConfig c;
  c.history = 2;
  c.embedding_dim = 6;
  c.hidden_dim = 12;
  c.epochs = 5;
  c.lr0 = 0.5;
  c.minibatch = 16;
  c.seed = 7;
  return c;
}

double SquaredDiff(const Matrix& a, const Matrix& b) { return (a - b).squaredNorm(); }
double SquaredDiff(const Vector& a, const Vector& b) { return (a - b).squaredNorm(); }

// Plain re-derivation of the network output from its parameters.
double ComposedLogProb(const NnlmModel& m, const std::vector<WordId>& context, WordId word) {
  const Eigen::Index e = m.embeddings().cols();
  RowVector x(context.size() * e);
  for (std::size_t j = 0; j < context.size(); ++j) x.segment(j * e, e) = m.embeddings().row(context[j]);
  RowVector h = x * m.hidden_weights() + m.hidden_bias().transpose();
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = 1.0 / (1.0 + std::exp(-h(i)));
  const RowVector z = h * m.output_weights() + m.output_bias().transpose();
  double denom = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) denom += std::exp(z(i));
  return z(word - 1) - std::log(denom);
}

TEST_CASE("nnlm output distribution is normalized and excludes the start symbol") {
  Rng rng(3);
  const lm::Corpus corpus = ToyCorpus(rng, 8, 50);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  const NnlmModel model(vocab, SmallConfig());
  CHECK(model.num_outputs() == vocab.size() - 1);
  const ContextDataset data(corpus, vocab, 2);
  const Matrix lp = model.LogPosteriors(data.All());
  for (Eigen::Index r = 0; r < lp.rows(); ++r) CHECK(std::abs(lp.row(r).array().exp().sum() - 1.0) < 1e-12);
  const std::vector<WordId> hist{3, 4};
  CHECK(std::isinf(model.LogProb(hist, lm::Vocabulary::kBos)));
  double total = 0.0;
  for (WordId w = 1; w < vocab.size(); ++w) total += std::exp(model.LogProb(hist, w));
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("nnlm forward pass matches an explicit composition") {
  Rng rng(4);
  const lm::Corpus corpus = ToyCorpus(rng, 9, 40);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  NnlmConfig cfg = SmallConfig();
  cfg.history = 3;
  const NnlmTrainResult trained = TrainNnlm(corpus, vocab, cfg);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<WordId> ctx(3);
    for (auto& c : ctx) c = static_cast<WordId>(UniformIndex(rng, vocab.size()));
    const WordId w = 1 + static_cast<WordId>(UniformIndex(rng, vocab.size() - 1));
    worst = std::max(worst, std::abs(trained.model.LogProb(ctx, w) - ComposedLogProb(trained.model, ctx, w)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("short histories are padded with the start symbol") {
  Rng rng(5);
  const lm::Corpus corpus = ToyCorpus(rng, 6, 30);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  NnlmConfig cfg = SmallConfig();
  cfg.history = 3;
  const NnlmModel model(vocab, cfg);
  const std::vector<WordId> shorter{5};
  const std::vector<WordId> explicit_pad{lm::Vocabulary::kBos, lm::Vocabulary::kBos, 5};
  const std::vector<WordId> longer{7, 6, lm::Vocabulary::kBos, lm::Vocabulary::kBos, 5};
  for (WordId w = 1; w < vocab.size(); ++w) {
    CHECK(model.LogProb(shorter, w) == model.LogProb(explicit_pad, w));
    CHECK(model.LogProb(longer, w) == model.LogProb(explicit_pad, w));
  }
}

TEST_CASE("nnlm SGD step follows the loss gradient") {
  Rng rng(6);
  const lm::Corpus corpus = ToyCorpus(rng, 7, 20);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  const ContextDataset data(corpus, vocab, 2);
  const ContextBatch batch = data.All();
  const NnlmModel before(vocab, SmallConfig());
  NnlmModel after = before;
  const double lr = 1e-5;
  Rng unused(0);
  after.TrainStep(batch, lr, {0.0, &unused});
  const double step_sq = SquaredDiff(before.embeddings(), after.embeddings()) +
                         SquaredDiff(before.hidden_weights(), after.hidden_weights()) +
                         SquaredDiff(before.hidden_bias(), after.hidden_bias()) +
                         SquaredDiff(before.output_weights(), after.output_weights()) +
                         SquaredDiff(before.output_bias(), after.output_bias());
  const double grad_sq = step_sq / (lr * lr);
  const double decrease = (before.Evaluate(batch).MeanLoss() - after.Evaluate(batch).MeanLoss()) / lr;
  CHECK(grad_sq > 0.0);
  CHECK(testing::RelativeError(grad_sq, decrease) < 1e-3);
}

TEST_CASE("nnlm training lowers cross-entropy every epoch and is reproducible") {
  Rng rng(11);
  const lm::Corpus corpus = ToyCorpus(rng, 12, 200);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  const ContextDataset data(corpus, vocab, 2);
  const NnlmConfig cfg = SmallConfig();

  const NnlmTrainResult a = TrainNnlm(corpus, vocab, cfg, &corpus);
  REQUIRE(a.history.size() == 5);
  double prev = a.initial_loss;
  for (const auto& rec : a.history) {
    REQUIRE(rec.has_heldout);
    CHECK(rec.heldout_loss < prev);
    prev = rec.heldout_loss;
  }

  const NnlmTrainResult b = TrainNnlm(corpus, vocab, cfg);
  CHECK(a.model == b.model);
  NnlmConfig other = cfg;
  other.seed = 8;
  CHECK_FALSE(TrainNnlm(corpus, vocab, other).model == a.model);

  // Beats the unigram entropy of the training corpus.
  const lm::NgramModel unigram = lm::EstimateKneserNey(lm::CountNgrams(corpus, 1, vocab));
  double uni = 0.0, nn = 0.0;
  std::size_t tokens = 0;
  for (const auto& s : corpus) {
    for (double v : lm::SentenceLogProbs(unigram, s)) uni -= v;
    for (double v : lm::SentenceLogProbs(a.model, s)) nn -= v;
    tokens += s.size() + 1;
  }
  CHECK(nn / tokens < uni / tokens);
}

TEST_CASE("nnlm serialization round trips and rejects corruption") {
  Rng rng(12);
  const lm::Corpus corpus = ToyCorpus(rng, 5, 20);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  const NnlmModel model = TrainNnlm(corpus, vocab, SmallConfig()).model;
  testing::TempDir dir;
  model.Save(dir.File("m.nnlm"));
  const NnlmModel back = NnlmModel::Load(dir.File("m.nnlm"));
  CHECK(back == model);
  const std::vector<WordId> hist{3};
  CHECK(back.LogProb(hist, 4) == model.LogProb(hist, 4));

  std::stringstream ss;
  model.Write(ss);
  std::string bytes = ss.str();
  std::stringstream bad_magic(std::string("XXXX") + bytes.substr(4));
  CHECK_THROWS_AS(NnlmModel::Read(bad_magic), ParseError);
  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS(NnlmModel::Read(truncated));
  CHECK_THROWS_AS(NnlmModel::Load(dir.File("missing")), IoError);
}

TEST_CASE("nnlm config validation") {
  NnlmConfig c;
  c.history = 0;
  CHECK_THROWS_AS(c.Validate(), ConfigError);
  const KvConfig kv = KvConfig::FromString("nnlm.history = 4\nnnlm.hidden_dim = 20\n");
  const NnlmConfig parsed = NnlmConfig::FromKv(kv);
  CHECK(parsed.history == 4);
  CHECK(parsed.hidden_dim == 20);
  CHECK(parsed.embedding_dim == NnlmConfig{}.embedding_dim);
}

// ---- rescoring -------------------------------------------------------------

decode::NBestList PairList() {
  decode::NBestList l;
  l.utt_id = "u1";
  l.entries.push_back({{"a", "b"}, -10.0, -9.0});
  l.entries.push_back({{"a", "c"}, -10.5, -2.0});
  return l;
}

TEST_CASE("rescoring with zero LM weight keeps the acoustic order") {
  Rng rng(13);
  decode::NBestList l;
  l.utt_id = "u";
  for (int i = 0; i < 10; ++i) {
    l.entries.push_back({{"w" + std::to_string(i)}, -static_cast<double>(i) - 0.5 * (i % 2), UniformReal(rng, -30, 0)});
  }
  const RescoredList r = RescoreList(l, {}, {1.0, 0.0, 0.0});
  for (std::size_t i = 0; i < r.ranking.size(); ++i) CHECK(r.ranking[i].original_rank == i);
}

TEST_CASE("a dominant LM weight flips the constructed pair") {
  const decode::NBestList l = PairList();
  CHECK(RescoreList(l, {}, {1.0, 0.0, 0.0}).Best() == 0);
  CHECK(RescoreList(l, {}, {1.0, 1.0, 0.0}).Best() == 1);
  // Adding a constant to every AM score changes no decision.
  decode::NBestList shifted = l;
  for (auto& e : shifted.entries) e.am_score += 123.0;
  for (double w : {0.0, 0.05, 0.2, 1.0}) {
    CHECK(RescoreList(shifted, {}, {1.0, w, 0.0}).Best() == RescoreList(l, {}, {1.0, w, 0.0}).Best());
  }
  // The word insertion bonus only matters for lists of different lengths.
  decode::NBestList lengths = l;
  lengths.entries[1].words.push_back("d");
  CHECK(RescoreList(lengths, {}, {1.0, 0.0, 1.0}).Best() == 1);
}

TEST_CASE("LM mixture combines per-token probabilities before the log") {
  Rng rng(14);
  const lm::Corpus corpus = ToyCorpus(rng, 6, 60);
  const lm::Vocabulary vocab = lm::Vocabulary::FromCorpus(corpus);
  const lm::NgramModel tri = lm::EstimateKneserNey(lm::CountNgrams(corpus, 3, vocab));
  const lm::NgramModel uni = lm::EstimateKneserNey(lm::CountNgrams(corpus, 1, vocab));
  const lm::Sentence s = corpus.front();

  double tri_only = 0.0;
  for (double v : lm::SentenceLogProbs(tri, s)) tri_only += v;
  CHECK(LmMixture{{&tri, &uni}, {1.0, 0.0}}.SentenceLog10(s) == tri_only / std::log(10.0));

  const std::vector<double> pt = lm::SentenceLogProbs(tri, s), pu = lm::SentenceLogProbs(uni, s);
  double mixed = 0.0, sum_of_logs = 0.0;
  for (std::size_t t = 0; t < pt.size(); ++t) {
    mixed += std::log(0.3 * std::exp(pt[t]) + 0.7 * std::exp(pu[t]));
    sum_of_logs += 0.3 * pt[t] + 0.7 * pu[t];
  }
  const double got = LmMixture{{&tri, &uni}, {0.3, 0.7}}.SentenceLog10(s) * std::log(10.0);
  CHECK(std::abs(got - mixed) < 1e-10);
  CHECK(got >= sum_of_logs - 1e-12);  // Jensen
  CHECK(std::abs(got - sum_of_logs) > 1e-6);
  CHECK_THROWS_AS((LmMixture{{&tri, &uni}, {0.5, 0.6}}.SentenceLog10(s)), ConfigError);
}

TEST_CASE("one-best WER and grid search") {
  const std::vector<decode::NBestList> lists{PairList()};
  const std::map<std::string, std::vector<std::string>> refs{{"u1", {"a", "c"}}};
  const auto am_only = RescoreAll(lists, {}, {1.0, 0.0, 0.0});
  CHECK(OneBestWer(lists, am_only, refs).Errors() == 1);
  const GridResult g = GridSearchWeights(lists, {}, refs, {0.0, 0.01, 0.5, 1.0}, {0.0});
  CHECK(g.wer.Errors() == 0);
  CHECK(g.weights.lm == 0.5);  // earliest grid point that flips the pair
  const std::map<std::string, std::vector<std::string>> missing;
  CHECK_THROWS_AS(OneBestWer(lists, am_only, missing), DataError);
}

}  // namespace
}  // namespace hasr::nnlm
