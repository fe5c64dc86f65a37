// tests/unit/decode_test.cc

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
#include "hasr/decode/nbest.h"
#include "hasr/decode/priors.h"
#include "hasr/decode/synth.h"
#include "hasr/decode/viterbi.h"
#include "hasr/decode/wer.h"
#include "hasr/features/lda.h"
#include "hasr/features/transforms.h"
#include "oracles/decode_oracle.h"
#include "test_util.h"

namespace hasr::decode {
namespace {

std::vector<std::string> Tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

// Plain Levenshtein distance, no alignment bookkeeping.
int EditDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

TEST_CASE("priors") {
  PriorVector p = EstimatePriors({{1, 1}, {0, 1}}, 2, 0.0);
  CHECK(p.p(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.p(1) == doctest::Approx(0.75).epsilon(1e-15));
  p = EstimatePriors({{0, 1, 2}, {2, 1, 0}}, 3, 0.5);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p.p(i) - 1.0 / 3) < 1e-15);
  p = EstimatePriors({{0, 0, 0, 1}}, 2, 1e9);
  CHECK(std::abs(p.p(0) - 0.5) < 1e-6);
  p.Validate();
  CHECK_THROWS_AS(EstimatePriors({{}, {}}, 2), DataError);
  CHECK_THROWS_AS(EstimatePriors({{3}}, 2), DataError);
  CHECK_THROWS_AS(EstimatePriors({{0}}, 2, 0.0), DataError);

  testing::TempDir dir;
  p = EstimatePriors({{0, 1, 1, 2}}, 4, 0.5);
  WritePriors(dir.File("priors"), p);
  CHECK(ReadPriors(dir.File("priors")).p == p.p);
}

TEST_CASE("acoustic scores") {
  PriorVector half{Vector::Constant(2, 0.5)};
  Matrix lp(1, 2);
  lp << std::log(0.8), std::log(0.2);
  Matrix s = AcousticScores(lp, half, 1.0);
  CHECK(s(0, 0) == doctest::Approx(std::log(1.6)));
  CHECK(s(0, 1) == doctest::Approx(std::log(0.4)));

  PriorVector skew{Vector(2)};
  skew.p << 0.9, 0.1;
  lp << std::log(0.6), std::log(0.4);
  s = AcousticScores(lp, skew, 1.0);
  CHECK(s(0, 1) > s(0, 0));

  Rng rng(3);
  const Matrix post = nn::LogSoftmaxRows(testing::RandomMatrix(20, 7, rng, 3.0));
  PriorVector uniform{Vector::Constant(7, 1.0 / 7)};
  for (double kappa : {0.1, 1.0, 3.0}) {
    const Matrix sc = AcousticScores(post, uniform, kappa);
    CHECK((sc - kappa * (post.array() + std::log(7.0)).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    for (Eigen::Index t = 0; t < 20; ++t) {
      Eigen::Index a = 0, b = 0;
      sc.row(t).maxCoeff(&a);
      post.row(t).maxCoeff(&b);
      CHECK(a == b);
    }
  }
  CHECK_THROWS_AS(AcousticScores(post, half), ShapeError);
  CHECK_THROWS_AS(AcousticScores(post, uniform, 0.0), ConfigError);
}

TEST_CASE("topology") {
  std::istringstream is("# toy\nloop false\nword yes 2 0.5 0.25\nword no 1 0\n");
  const HmmTopology t = HmmTopology::Parse(is);
  CHECK(t.num_states() == 3);
  CHECK(!t.loop());
  CHECK(t.LastState(0) == 1);
  CHECK(t.WordOf(2) == 1);
  CHECK(t.FindWord("no") == 1);
  CHECK(t.LogAdvance(1) == doctest::Approx(std::log(0.75)));
  std::ostringstream os;
  t.Write(os);
  std::istringstream again(os.str());
  const HmmTopology t2 = HmmTopology::Parse(again);
  CHECK(t2.num_states() == 3);
  CHECK(t2.word(0).self_loop == t.word(0).self_loop);

  std::istringstream bad1("word a 2 0.5\n");
  CHECK_THROWS_AS(HmmTopology::Parse(bad1), ParseError);
  std::istringstream bad2("word a 1 1.0\n");
  CHECK_THROWS_AS(HmmTopology::Parse(bad2), ParseError);
  std::istringstream bad3("wurd a 1 0.5\n");
  CHECK_THROWS_AS(HmmTopology::Parse(bad3), ParseError);
}

TEST_CASE("viterbi basics") {
  const HmmTopology single({{"only", {0.5}}}, true);
  Matrix s(1, 1);
  s << -2.0;
  const DecodeResult r = ViterbiDecode(s, single);
  CHECK(r.words == std::vector<int>{0});
  CHECK(r.states == std::vector<StateId>{0});

  const HmmTopology three = HmmTopology::Uniform({"a", "b"}, 3, 0.5);
  CHECK_THROWS_AS(ViterbiDecode(Matrix::Zero(2, 6), three), DecodeError);
  CHECK_THROWS_AS(ViterbiDecode(Matrix::Zero(4, 5), three), ShapeError);

  // Two back-to-back one-state words are distinguishable from one word
  // that loops.
  const HmmTopology ones({{"x", {0.9}}, {"y", {0.9}}}, true);
  Matrix xs(2, 2);
  xs << 0, -50, 0, -50;
  CHECK(ViterbiDecode(xs, ones).words == std::vector<int>{0});
  const HmmTopology leave({{"x", {0.01}}, {"y", {0.01}}}, true);
  CHECK(ViterbiDecode(xs, leave).words == std::vector<int>{0, 0});
}

TEST_CASE("viterbi matches exhaustive enumeration") {
  Rng rng(2024);
  int compared = 0, unreachable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int per_word[] = {2, 3, 4, 20};
    const HmmTopology topo = testing::RandomTopology(rng, 3, per_word[trial % 4]);
    CHECK(topo.num_states() <= 60);
    const int T = 1 + static_cast<int>(UniformIndex(rng, 6));
    const Matrix scores = testing::RandomMatrix(T, topo.num_states(), rng, 4.0);
    const testing::BruteForceBest oracle = testing::BruteForceDecode(scores, topo);
    if (oracle.paths == 0) {
      CHECK_THROWS_AS(ViterbiDecode(scores, topo), DecodeError);
      ++unreachable;
      continue;
    }
    const DecodeResult r = ViterbiDecode(scores, topo);
    CHECK(std::abs(r.score - oracle.score) < 1e-9);
    if (oracle.score - oracle.runner_up > 1e-9) {
      CHECK(r.words == oracle.words);
      CHECK(r.states == oracle.states);
    }
    const DecodeResult shifted = ViterbiDecode(scores.array() + 17.5, topo);
    CHECK(shifted.states == r.states);
    CHECK(shifted.words == r.words);
    ++compared;
  }
  CHECK(compared > 100);
  CHECK(unreachable > 0);
}

TEST_CASE("forced alignment") {
  Rng rng(77);
  const HmmTopology topo = HmmTopology::Uniform({"a", "b", "c"}, 2, 0.6);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix scores = testing::RandomMatrix(7, 6, rng, 3.0);
    const DecodeResult best = ViterbiDecode(scores, topo);
    const DecodeResult forced = ForcedAlign(scores, topo, best.words);
    // Same path; the decoder's score additionally carries one word-entry
    // term per word.
    CHECK(forced.states == best.states);
    CHECK(std::abs(forced.score + topo.LogWordEntry() * best.words.size() - best.score) < 1e-9);
  }
  CHECK_THROWS_AS(ForcedAlign(Matrix::Zero(3, 6), topo, {0, 1}), DecodeError);
}

TEST_CASE("wer") {
  const auto abc = Tokens("a b c");
  CHECK(Wer(abc, abc).Rate() == 0.0);
  const WerReport empty = Wer(abc, {});
  CHECK(empty.deletions == 3);
  CHECK(empty.Rate() == 1.0);
  const WerReport r = Wer(abc, Tokens("a c d"));
  CHECK(r.Errors() == 2);
  CHECK(r.Errors() == EditDistance(abc, Tokens("a c d")));
  CHECK(Wer({}, Tokens("x y")).insertions == 2);

  // Equal-cost alignments resolve toward substitutions.
  const WerReport sub = Wer(Tokens("a b"), Tokens("b a"));
  CHECK(sub.substitutions == 2);
  CHECK(sub.Errors() == 2);

  Rng rng(5);
  auto random_seq = [&] {
    std::vector<std::string> s(UniformIndex(rng, 7));
    for (auto& w : s) w = std::string(1, static_cast<char>('a' + UniformIndex(rng, 3)));
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    const auto x = random_seq(), y = random_seq(), z = random_seq();
    const WerReport xy = Wer(x, y), yx = Wer(y, x);
    CHECK(xy.Errors() == EditDistance(x, y));
    CHECK(xy.Errors() == yx.Errors());
    CHECK(xy.insertions - xy.deletions == static_cast<long>(y.size()) - static_cast<long>(x.size()));
    CHECK(Wer(x, z).Errors() <= xy.Errors() + Wer(y, z).Errors());
  }
}

TEST_CASE("synthetic corpus") {
  SynthConfig config;
  config.num_utterances = 40;
  const SynthCorpus a = GenerateCorpus(config), b = GenerateCorpus(config);
  REQUIRE(a.utterances.size() == 40);
  for (std::size_t i = 0; i < a.utterances.size(); ++i) {
    CHECK(a.utterances[i].frames == b.utterances[i].frames);
    CHECK(a.utterances[i].states == b.utterances[i].states);
    CHECK(a.utterances[i].frames.rows() == static_cast<Eigen::Index>(a.utterances[i].states.size()));
    CHECK(!a.utterances[i].words.empty());
  }
  const SynthCorpus other = GenerateCorpus(config, "test");
  CHECK(other.utterances[0].frames != a.utterances[0].frames);
  CHECK(other.model.means == a.model.means);

  config.vocab_size = 0;
  CHECK_THROWS_AS(GenerateCorpus(config), ConfigError);
}

TEST_CASE("bayes oracle decodes the default corpus") {
  SynthConfig config;
  const SynthCorpus corpus = GenerateCorpus(config, "test");
  WerReport total;
  long correct = 0, frames = 0;
  for (const auto& utt : corpus.utterances) {
    const Matrix ll = corpus.model.LogLikelihoods(utt.frames, utt.side_id);
    for (Eigen::Index t = 0; t < ll.rows(); ++t) {
      Eigen::Index arg = 0;
      ll.row(t).maxCoeff(&arg);
      correct += arg == utt.states[t];
      ++frames;
    }
    const DecodeResult r = ViterbiDecode(ll, corpus.model.topology);
    total += Wer(corpus.Words(utt), WordNames(corpus.model.topology, r.words));
  }
  MESSAGE("bayes frame accuracy " << static_cast<double>(correct) / frames << ", WER " << total.Rate());
  CHECK(total.Rate() < 0.03);
  CHECK(static_cast<double>(correct) / frames > 0.95);
}

TEST_CASE("lda keeps the synthetic classes separable") {
  SynthConfig config;
  config.num_utterances = 150;
  const SynthCorpus corpus = GenerateCorpus(config);
  std::vector<features::FeatureMatrix> utts;
  std::vector<std::string> sides;
  for (const auto& u : corpus.utterances) {
    utts.push_back({u.frames, features::FeatureKind::kRaw});
    sides.push_back(u.side_id);
  }
  features::CmvnBySide(&utts, sides);
  std::vector<Matrix> spliced;
  std::vector<int> labels;
  Eigen::Index rows = 0;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    spliced.push_back(features::Splice(utts[i], 1).values);
    rows += spliced.back().rows();
    labels.insert(labels.end(), corpus.utterances[i].states.begin(), corpus.utterances[i].states.end());
  }
  Matrix x(rows, spliced.front().cols());
  Eigen::Index at = 0;
  for (const auto& m : spliced) x.middleRows(at, m.rows()) = m, at += m.rows();

  const features::LdaTransform lda = features::EstimateLda(x, labels, 40);
  const Matrix y = x * lda.projection.transpose();
  auto nearest_mean_accuracy = [&](const Matrix& data) {
    const int S = corpus.model.topology.num_states();
    Matrix means = Matrix::Zero(S, data.cols());
    Vector counts = Vector::Zero(S);
    for (Eigen::Index t = 0; t < data.rows(); ++t) means.row(labels[t]) += data.row(t), counts(labels[t]) += 1;
    for (int s = 0; s < S; ++s) means.row(s) /= counts(s);
    long hits = 0;
    for (Eigen::Index t = 0; t < data.rows(); ++t) {
      Eigen::Index arg = 0;
      (means.rowwise() - data.row(t)).rowwise().squaredNorm().minCoeff(&arg);
      hits += arg == labels[t];
    }
    return static_cast<double>(hits) / static_cast<double>(data.rows());
  };
  const double full = nearest_mean_accuracy(x), reduced = nearest_mean_accuracy(y);
  MESSAGE("nearest-mean accuracy: full " << full << ", lda " << reduced);
  CHECK(reduced >= full - 0.02);
}

TEST_CASE("context targets") {
  const HmmTopology topo = HmmTopology::Uniform({"a", "b"}, 2, 0.5);
  // a a | b | a (first state of a re-entered after b)
  const std::vector<StateId> states = {0, 0, 1, 2, 3, 0, 1};
  const auto t2 = ContextTargets(states, topo, 2);
  // prev word -1 -> ctx 0, prev a(0) -> ctx 1, prev b(1) -> ctx 0
  CHECK(t2 == std::vector<StateId>{0, 0, 1, 2 + 4, 3 + 4, 0, 1});
  CHECK(ContextTargets(states, topo, 1) == states);
  const auto t3 = ContextTargets(states, topo, 3);
  CHECK(t3[5] == 0 + 4 * 2);
}

TEST_CASE("n-best lists") {
  SynthConfig config;
  config.num_utterances = 3;
  config.mean_scale = 0.3;
  const SynthCorpus corpus = GenerateCorpus(config, "dev");
  std::vector<NBestList> lists;
  for (const auto& u : corpus.utterances) {
    const Matrix ll = corpus.model.LogLikelihoods(u.frames, u.side_id);
    const NBestList list = GenerateNBest(u.utt_id, ll, corpus.model.topology, 10);
    CHECK(list.entries.size() == 10);
    for (std::size_t i = 1; i < list.entries.size(); ++i) {
      CHECK(list.entries[i].am_score <= list.entries[i - 1].am_score);
    }
    const auto best = WordNames(corpus.model.topology, ViterbiDecode(ll, corpus.model.topology).words);
    bool found = false;
    for (const auto& e : list.entries) found = found || e.words == best;
    CHECK(found);
    lists.push_back(list);
  }
  lists[0].entries[0].lm_score = -3.0000000000000004;
  std::stringstream ss;
  WriteNBest(ss, lists);
  CHECK(ReadNBest(ss) == lists);

  std::istringstream gap("u1 1 0 0 1 a\nu1 3 0 0 1 b\n");
  CHECK_THROWS_AS(ReadNBest(gap), ParseError);
  std::istringstream count("u1 1 0 0 2 a\n");
  CHECK_THROWS_AS(ReadNBest(count), ParseError);
}

}  // namespace hasr::decode
