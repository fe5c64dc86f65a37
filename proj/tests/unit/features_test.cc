// tests/unit/features_test.cc

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
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hasr/common/errors.h"
#include "hasr/features/io.h"
#include "hasr/features/lda.h"
#include "hasr/features/logmel.h"
#include "hasr/features/transforms.h"
#include "test_util.h"

namespace hasr::features {
namespace {

using testing::RandomMatrix;

Waveform Tone(double hz, double seconds, int rate = 8000, double amp = 8000.0) {
  Waveform w;
  w.sample_rate = rate;
  w.side_id = "A";
  const int n = static_cast<int>(std::lround(seconds * rate));
  for (int i = 0; i < n; ++i) {
    w.samples.push_back(static_cast<std::int16_t>(std::lround(amp * std::sin(2 * std::numbers::pi * hz * i / rate))));
  }
  return w;
}

FeatureMatrix Frames(const Matrix& m) { return FeatureMatrix{m, FeatureKind::kRaw}; }

}  // namespace

TEST_CASE("framing count") {
  CHECK(NumFrames(8000, 8000, {}) == 98);
  CHECK(Logmel(Tone(300, 1.0)).num_frames() == 98);
  // Brute-force count of frame starts that fit inside the signal.
  for (int rate : {8000, 16000, 11025}) {
    const int len = FrameLength(rate, {}), shift = FrameShift(rate, {});
    for (std::size_t n : {0ul, 1ul, 199ul, 200ul, 201ul, 279ul, 280ul, 281ul, 4321ul, 16000ul}) {
      int count = 0;
      for (std::size_t start = 0; start + len <= n; start += shift) ++count;
      CHECK(NumFrames(n, rate, {}) == count);
    }
  }
}

TEST_CASE("logmel floor and short input") {
  Waveform zero;
  zero.samples.assign(800, 0);
  const FeatureMatrix f = Logmel(zero);
  CHECK(f.dim() == 40);
  CHECK((f.values.array() == std::log(1e-10)).all());

  Waveform tiny;
  tiny.samples.assign(199, 1);
  CHECK_THROWS_AS(Logmel(tiny), DataError);
}

TEST_CASE("logmel tone lands in nearest filter") {
  // Independent mel-center computation (base-10 mel formula).
  auto mel = [](double f) { return 2595.0 * std::log10(1.0 + f / 700.0); };
  auto inv = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  for (double hz : {1000.0, 450.0, 2500.0}) {
    int nearest = 0;
    double best = 1e30;
    for (int m = 0; m < 40; ++m) {
      const double c = inv(mel(4000.0) * (m + 1) / 41.0);
      if (std::abs(c - hz) < best) best = std::abs(c - hz), nearest = m;
    }
    const FeatureMatrix f = Logmel(Tone(hz, 0.5));
    for (Eigen::Index t = 0; t < f.num_frames(); ++t) {
      Eigen::Index arg = 0;
      f.values.row(t).maxCoeff(&arg);
      CHECK(arg == nearest);
    }
  }
}

TEST_CASE("deltas") {
  SUBCASE("constant") {
    const FeatureMatrix d = AddDeltas(Frames(Matrix::Constant(9, 4, 3.5)));
    CHECK(d.dim() == 12);
    CHECK(d.values.rightCols(8).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("ramp") {
    Matrix x(20, 2);
    for (int t = 0; t < 20; ++t) x.row(t).setConstant(t);
    const FeatureMatrix d = AddDeltas(Frames(x));
    for (int t = 2; t < 18; ++t) CHECK(d.values(t, 2) == doctest::Approx(1.0));
    for (int t = 4; t < 16; ++t) CHECK(std::abs(d.values(t, 4)) < 1e-12);
  }
  SUBCASE("direct formula") {
    Rng rng(5);
    const Matrix x = RandomMatrix(7, 3, rng);
    auto at = [](const Matrix& m, int t) { return m.row(std::clamp(t, 0, static_cast<int>(m.rows()) - 1)); };
    Matrix d1(7, 3), d2(7, 3);
    for (int t = 0; t < 7; ++t) d1.row(t) = (1 * (at(x, t + 1) - at(x, t - 1)) + 2 * (at(x, t + 2) - at(x, t - 2))) / 10.0;
    for (int t = 0; t < 7; ++t) d2.row(t) = (1 * (at(d1, t + 1) - at(d1, t - 1)) + 2 * (at(d1, t + 2) - at(d1, t - 2))) / 10.0;
    const FeatureMatrix d = AddDeltas(Frames(x));
    CHECK((d.values.leftCols(3) - x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.values.middleCols(3, 3) - d1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((d.values.rightCols(3) - d2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("splice") {
  Rng rng(6);
  const Matrix x = RandomMatrix(10, 3, rng);
  CHECK(Splice(Frames(x), 0).values == x);
  const FeatureMatrix s = Splice(Frames(x), 2);
  CHECK(s.dim() == 15);
  for (int j = 0; j < 3; ++j) CHECK(s.values.block(0, 3 * j, 1, 3) == x.row(0));
  for (int t = 0; t < 10; ++t) CHECK(s.values.block(t, 6, 1, 3) == x.row(t));
  CHECK(s.values.block(9, 12, 1, 3) == x.row(9));
  CHECK_THROWS_AS(Splice(Frames(x), -1), ConfigError);
}

TEST_CASE("deltas and splice are shift-equivariant away from edges") {
  Rng rng(7);
  const Matrix x = RandomMatrix(30, 4, rng);
  const Matrix shifted = x.bottomRows(29);
  const Matrix d = AddDeltas(Frames(x)).values, ds = AddDeltas(Frames(shifted)).values;
  const Matrix s = Splice(Frames(x), 3).values, ss = Splice(Frames(shifted), 3).values;
  for (int t = 5; t < 24; ++t) {
    CHECK((d.row(t + 1) - ds.row(t)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.row(t + 1) == ss.row(t));
  }
}

TEST_CASE("cmvn") {
  Rng rng(8);
  Matrix x = RandomMatrix(200, 5, rng, 3.0).array() + 7.0;
  x.col(2).setConstant(4.0);
  const FeatureMatrix n = Cmvn(Frames(x));
  const RowVector mean = n.values.colwise().mean();
  CHECK(mean.cwiseAbs().maxCoeff() < 1e-9);
  for (int c : {0, 1, 3, 4}) {
    const double var = (n.values.col(c).array() - mean(c)).square().mean();
    CHECK(std::abs(var - 1.0) < 1e-6);
  }
  CHECK(n.values.col(2).cwiseAbs().maxCoeff() == 0.0);
  const FeatureMatrix twice = Cmvn(n);
  CHECK((twice.values - n.values).cwiseAbs().maxCoeff() < 1e-9);

  SUBCASE("statistics pooled per side") {
    std::vector<FeatureMatrix> utts = {Frames(x.topRows(80)), Frames(x.middleRows(80, 70)), Frames(x.bottomRows(50))};
    CmvnBySide(&utts, {"s1", "s2", "s1"});
    Matrix pooled(130, 5);
    pooled << utts[0].values, utts[2].values;
    CHECK(pooled.colwise().mean().cwiseAbs().maxCoeff() < 1e-9);
    Matrix joined(130, 5);
    joined << x.topRows(80), x.bottomRows(50);
    CHECK((pooled - Cmvn(Frames(joined)).values).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((utts[1].values - Cmvn(Frames(x.middleRows(80, 70))).values).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("lda recovers the Fisher direction") {
  Rng rng(9);
  const int per_class = 20000;
  const Vector mu0 = Vector::Zero(2);
  Vector mu1(2);
  mu1 << 6.0, 2.0;
  Matrix x(2 * per_class, 2);
  std::vector<int> labels;
  for (int i = 0; i < 2 * per_class; ++i) {
    const int c = i % 2;
    const Vector& mu = c ? mu1 : mu0;
    x(i, 0) = mu(0) + StandardNormal(rng);
    x(i, 1) = mu(1) + StandardNormal(rng);
    labels.push_back(c);
  }
  const LdaTransform lda = EstimateLda(x, labels, 1);
  const Vector dir = lda.projection.row(0).transpose();
  const double cosine = std::abs(dir.dot(mu1 - mu0)) / (dir.norm() * (mu1 - mu0).norm());
  const double degrees = std::acos(std::min(1.0, cosine)) * 180.0 / std::numbers::pi;
  CHECK(degrees < 1.0);
  CHECK(lda.projection(0, 0) > 0);  // largest-magnitude entry is positive
}

TEST_CASE("lda structure") {
  Rng rng(10);
  const int dim = 6, classes = 4, n = 400;
  Matrix means = RandomMatrix(classes, dim, rng, 3.0);
  Matrix x(n, dim);
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(i % classes);
    for (int d = 0; d < dim; ++d) x(i, d) = means(i % classes, d) + StandardNormal(rng) * (1.0 + 0.3 * d);
  }
  const LdaTransform lda = EstimateLda(x, labels, 5);  // beyond classes - 1 via regularization
  CHECK(lda.num_classes == classes);
  for (int r = 1; r < 5; ++r) CHECK(lda.eigenvalues(r) <= lda.eigenvalues(r - 1));
  const ScatterMatrices sc = ComputeScatter(x, labels);
  const Matrix gram = lda.projection * sc.within * lda.projection.transpose();
  CHECK((gram - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-6);
  for (int r = 0; r < 5; ++r) {
    Eigen::Index arg = 0;
    lda.projection.row(r).cwiseAbs().maxCoeff(&arg);
    CHECK(lda.projection(r, arg) > 0);
  }
  CHECK(lda.Apply(Frames(x)).dim() == 5);
  CHECK_THROWS_AS(EstimateLda(x, labels, 7), ConfigError);
  CHECK_THROWS_AS(EstimateLda(x, std::vector<int>(n, 1), 2), ConfigError);
}

TEST_CASE("network input transforms") {
  Rng rng(11);
  const Matrix x = RandomMatrix(6, 12, rng);  // 4 bands × 3 streams
  CHECK(BuildNetworkInput(x, InputTransform::Parse("none")) == x);
  CHECK(BuildNetworkInput(x, InputTransform::Parse("splice:1")) == Splice(Frames(x), 1).values);

  const Matrix w = BuildNetworkInput(x, InputTransform::Parse("window:3"));
  CHECK(w.cols() == 36);
  CHECK(w.block(1, 0, 1, 12) == x.row(1));
  CHECK(w.block(1, 24, 1, 12) == x.row(3));
  CHECK(w.block(5, 24, 1, 12) == x.row(5));

  const InputTransform cnn = InputTransform::Parse("cnn:2");
  const nn::Geometry g = cnn.CnnGeometry(12);
  CHECK(g == nn::Geometry{4, 5, 3});
  const Matrix b = BuildNetworkInput(x, cnn);
  CHECK(b.cols() == 60);
  // band h, time offset w, stream c lives at (h * 5 + w) * 3 + c.
  CHECK(b(3, (1 * 5 + 4) * 3 + 2) == x(5, 2 * 4 + 1));
  CHECK(b(3, (0 * 5 + 0) * 3 + 1) == x(1, 1 * 4 + 0));
  CHECK(b(0, (2 * 5 + 0) * 3 + 0) == x(0, 2));
  CHECK(cnn.OutputDim(12) == 60);
  CHECK(InputTransform::Parse("cnn:5").ToString() == "cnn:5");

  CHECK_THROWS_AS(InputTransform::Parse("splice"), ConfigError);
  CHECK_THROWS_AS(InputTransform::Parse("pca:3"), ConfigError);
  CHECK_THROWS_AS(BuildNetworkInput(x.leftCols(10), cnn), ShapeError);
}

TEST_CASE("file formats") {
  testing::TempDir dir;
  Rng rng(12);
  const Matrix m = RandomMatrix(5, 3, rng);
  WriteFeatureFile(dir.File("a.feat"), m);
  const Matrix back = ReadFeatureFile(dir.File("a.feat"));
  CHECK((back - m.cast<float>().cast<double>()).cwiseAbs().maxCoeff() == 0.0);

  std::stringstream bad("FEAX\x01\x00\x00\x00");
  CHECK_THROWS_AS(ReadFeatures(bad), ParseError);

  std::vector<Alignment> ali = {{"u1", {0, 0, 1, 2}}, {"u2", {5}}};
  WriteAlignmentFile(dir.File("ali.txt"), ali);
  const auto ali_back = ReadAlignmentFile(dir.File("ali.txt"));
  REQUIRE(ali_back.size() == 2);
  CHECK(ali_back[0].states == ali[0].states);
  CHECK(ali_back[1].utt_id == "u2");
  std::stringstream bad_ali("u1 3 0 1\n");
  CHECK_THROWS_AS(ReadAlignments(bad_ali), ParseError);

  WriteFeatureList(dir.File("list.scp"), {{"u1", "a.feat"}});
  const auto list = ReadFeatureList(dir.File("list.scp"));
  CHECK(ReadFeatureFile(list.at(0).path) == back);

  Waveform w = Tone(500, 0.1);
  w.samples[3] = -32768;
  w.side_id = "sw02001-A";
  WriteWaveform(dir.File("w.pcm"), w);
  const Waveform wb = ReadWaveform(dir.File("w.pcm"));
  CHECK(wb.samples == w.samples);
  CHECK(wb.side_id == w.side_id);
  CHECK(wb.sample_rate == 8000);

  WriteTranscripts(dir.File("ref.txt"), {{"u1", {"a", "b"}}, {"u2", {}}});
  const auto tr = ReadTranscripts(dir.File("ref.txt"));
  CHECK(tr.size() == 2);
  CHECK(tr[0].second == std::vector<std::string>{"a", "b"});
  CHECK(tr[1].second.empty());
  CHECK_THROWS_AS(ReadFeatureFile(dir.File("missing.feat")), IoError);
}

}  // namespace hasr::features
