// tests/unit/nn_core_test.cc

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
#include "hasr/nn/layers.h"
#include "hasr/nn/network.h"
#include "hasr/nn/serialization.h"
#include "test_util.h"

using namespace hasr;
using namespace hasr::nn;
using hasr::testing::ParamGradientError;
using hasr::testing::RandomMatrix;
using hasr::testing::RandomVector;

namespace {

Minibatch RandomBatch(int n, int dim, int classes, Rng& rng, double scale = 1.0) {
  Minibatch b;
  b.inputs = RandomMatrix(n, dim, rng, scale);
  for (int i = 0; i < n; ++i) b.targets.push_back(static_cast<StateId>(UniformIndex(rng, classes)));
  return b;
}

// Randomizes all biases too (InitParams zeroes them), so that ReLU/maxout
// kinks are not hit systematically.
ModelParams RandomParams(const NetworkSpec& spec, Rng& rng, double scale = 0.5) {
  ModelParams p = InitParams(spec, rng());
  for (auto& l : p.layers) {
    if (l.weights.size()) l.weights = RandomMatrix(l.weights.rows(), l.weights.cols(), rng, scale);
    if (l.bias.size()) l.bias = RandomVector(l.bias.size(), rng, scale);
    if (l.recurrent.size())
      l.recurrent = RandomMatrix(l.recurrent.rows(), l.recurrent.cols(), rng, scale);
  }
  return p;
}

// Direct nested-loop valid cross-correlation.
Vector NaiveConv(const Vector& in, const Geometry& g, const Matrix& w, const Vector& b, int wh,
                 int ww) {
  const int oh_n = g.height - wh + 1, ow_n = g.width - ww + 1, f_n = static_cast<int>(w.rows());
  Vector out(oh_n * ow_n * f_n);
  for (int oh = 0; oh < oh_n; ++oh)
    for (int ow = 0; ow < ow_n; ++ow)
      for (int f = 0; f < f_n; ++f) {
        double s = b(f);
        for (int dh = 0; dh < wh; ++dh)
          for (int dw = 0; dw < ww; ++dw)
            for (int c = 0; c < g.channels; ++c)
              s += w(f, (dh * ww + dw) * g.channels + c) *
                   in(((oh + dh) * g.width + (ow + dw)) * g.channels + c);
        out((oh * ow_n + ow) * f_n + f) = s;
      }
  return out;
}

}  // namespace

TEST_CASE("maxout forward examples") {
  Vector a(2);
  a << -2.0, 1.0;
  auto r = MaxoutForward(a, 2);
  CHECK(r.outputs.size() == 1);
  CHECK(r.outputs(0) == 1.0);
  CHECK(r.winners == std::vector<int>{1});

  Vector tie(2);
  tie << 3.0, 3.0;
  r = MaxoutForward(tie, 2);
  CHECK(r.outputs(0) == 3.0);
  CHECK(r.winners == std::vector<int>{0});

  Rng rng(1);
  const Vector any = RandomVector(7, rng);
  r = MaxoutForward(any, 1);
  CHECK(r.outputs == any);
  for (int i = 0; i < 7; ++i) CHECK(r.winners[i] == i);

  CHECK_THROWS_AS(MaxoutForward(RandomVector(5, rng), 2), ShapeError);
}

TEST_CASE("maxout backward routes to winners") {
  Vector g(1);
  g << 5.0;
  Vector gi = MaxoutBackward(g, {1}, 2);
  CHECK(gi(0) == 0.0);
  CHECK(gi(1) == 5.0);
  CHECK(MaxoutBackward(Vector::Zero(3), {0, 3, 5}, 2).isZero());
  CHECK_THROWS_AS(MaxoutBackward(g, {2}, 2), LogicError);

  // Finite differences of sum_j c_j * max_group(a) away from ties.
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vector a = RandomVector(8, rng);
    const Vector c = RandomVector(4, rng);
    const auto fwd = MaxoutForward(a, 2);
    const Vector analytic = MaxoutBackward(c, fwd.winners, 2);
    for (int i = 0; i < 8; ++i) {
      const double eps = 1e-6;
      Vector ap = a, am = a;
      ap(i) += eps;
      am(i) -= eps;
      const double num = (c.dot(MaxoutForward(ap, 2).outputs) - c.dot(MaxoutForward(am, 2).outputs)) /
                         (2 * eps);
      CHECK(std::abs(num - analytic(i)) <= 1e-6 * std::max(1.0, std::abs(analytic(i))));
    }
  }
}

TEST_CASE("maxout with a zeroed filter reproduces relu") {
  Rng rng(3);
  const int in = 6, units = 4;
  const Matrix w = RandomMatrix(units, in, rng);
  const Vector b = RandomVector(units, rng);
  // Interleave each unit's filter with an all-zero partner.
  Matrix w2 = Matrix::Zero(2 * units, in);
  Vector b2 = Vector::Zero(2 * units);
  for (int j = 0; j < units; ++j) {
    w2.row(2 * j) = w.row(j);
    b2(2 * j) = b(j);
  }
  NetworkSpec relu_net{{LayerSpec::Affine(in, units), LayerSpec::Relu(units),
                        LayerSpec::Affine(units, 3), LayerSpec::SoftmaxOutput(3)}};
  NetworkSpec maxout_net{{LayerSpec::Affine(in, 2 * units), LayerSpec::Maxout(2 * units, 2),
                          LayerSpec::Affine(units, 3), LayerSpec::SoftmaxOutput(3)}};
  ModelParams pr = InitParams(relu_net, 5), pm = InitParams(maxout_net, 5);
  pr.layers[0].weights = w;
  pr.layers[0].bias = b;
  pm.layers[0].weights = w2;
  pm.layers[0].bias = b2;
  pm.layers[2] = pr.layers[2];
  const Matrix x = RandomMatrix(20, in, rng);
  const auto fr = NetworkForward(relu_net, pr, x, Mode::kEval);
  const auto fm = NetworkForward(maxout_net, pm, x, Mode::kEval);
  CHECK(fr.trace.activations[2] == fm.trace.activations[2]);
  CHECK(fr.logits == fm.logits);
}

TEST_CASE("conv2d geometry and delta filter") {
  const Geometry g{40, 11, 3};
  const LayerSpec conv = LayerSpec::Conv2d(g, 4, 9, 9);
  const Geometry out = conv.OutputGeometry();
  CHECK(out.height == 32);
  CHECK(out.width == 3);
  CHECK(out.channels == 4);

  Rng rng(11);
  const Vector in = RandomVector(g.Size(), rng);
  ConvShape shape{g, 1, 9, 9, 1};
  Matrix filt = Matrix::Zero(1, shape.Taps());
  const int dh = 2, dw = 5, ch = 1;
  filt(0, (dh * 9 + dw) * 3 + ch) = 1.0;
  const Vector y = Conv2dForward(in, shape, filt, Vector::Zero(1));
  REQUIRE(y.size() == 32 * 3);
  for (int oh = 0; oh < 32; ++oh)
    for (int ow = 0; ow < 3; ++ow)
      CHECK(y(oh * 3 + ow) == in(((oh + dh) * 11 + (ow + dw)) * 3 + ch));

  CHECK_THROWS_AS(Conv2dForward(RandomVector(8 * 8 * 1, rng), ConvShape{{8, 8, 1}, 1, 9, 9, 1},
                                Matrix::Zero(1, 81), Vector::Zero(1)),
                  ShapeError);
}

TEST_CASE("conv2d matches nested-loop oracle") {
  Rng rng(12);
  const Geometry g{12, 12, 2};
  for (int trial = 0; trial < 5; ++trial) {
    const Vector in = RandomVector(g.Size(), rng);
    ConvShape shape{g, 3, 4, 3, 1};
    const Matrix w = RandomMatrix(3, shape.Taps(), rng);
    const Vector b = RandomVector(3, rng);
    const Vector fast = Conv2dForward(in, shape, w, b);
    const Vector slow = NaiveConv(in, g, w, b, 4, 3);
    CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("maxpool examples and brute force") {
  Vector c = Vector::Constant(4 * 6 * 2, 1.5);
  auto r = MaxPoolForward(c, {4, 6, 2}, 2, 2);
  CHECK(r.outputs.size() == 2 * 3 * 2);
  CHECK((r.outputs.array() == 1.5).all());

  Vector sq(4);
  sq << 1, 2, 3, 4;  // [[1,2],[3,4]] with one channel
  r = MaxPoolForward(sq, {2, 2, 1}, 2, 2);
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs(0) == 4.0);
  CHECK(r.winners[0] == 3);

  Rng rng(4);
  const Geometry g{7, 5, 3};  // edge remainder truncated
  const Vector in = RandomVector(g.Size(), rng);
  r = MaxPoolForward(in, g, 2, 2);
  REQUIRE(r.outputs.size() == 3 * 2 * 3);
  for (int oh = 0; oh < 3; ++oh)
    for (int ow = 0; ow < 2; ++ow)
      for (int ch = 0; ch < 3; ++ch) {
        double best = -1e300;
        for (int dh = 0; dh < 2; ++dh)
          for (int dw = 0; dw < 2; ++dw)
            best = std::max(best, in(((oh * 2 + dh) * 5 + ow * 2 + dw) * 3 + ch));
        CHECK(r.outputs((oh * 2 + ow) * 3 + ch) == best);
      }
}

TEST_CASE("unfolded rnn special cases") {
  Rng rng(21);
  const RecurrentShape s{6, 4, 0, 5};
  const Vector window = RandomVector(24, rng);
  const Matrix w = RandomMatrix(5, 4, rng);
  const Vector b = RandomVector(5, rng);
  // Recurrence disabled: only the last-processed frame (the first in the
  // window, frame t) matters.
  const Vector h = UnfoldedRnnForward(window, s, w, Matrix::Zero(5, 5), b);
  const Vector expect = (w * window.head(4) + b).unaryExpr([](double v) { return Sigmoid(v); });
  CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-15);

  // One step is a sigmoid affine layer.
  const RecurrentShape one{1, 4, 0, 5};
  const Vector h1 = UnfoldedRnnForward(window.head(4), one, w, RandomMatrix(5, 5, rng), b);
  CHECK((h1 - expect).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(UnfoldedRnnForward(window.head(20), s, w, Matrix::Zero(5, 5), b), ShapeError);

  // Processing order: the window is consumed from its last frame backwards.
  const Matrix u = RandomMatrix(5, 5, rng);
  Vector manual = Vector::Zero(5);
  for (int k = 5; k >= 0; --k) {
    manual = (w * window.segment(4 * k, 4) + u * manual + b).unaryExpr([](double v) {
      return Sigmoid(v);
    });
  }
  CHECK((UnfoldedRnnForward(window, s, w, u, b) - manual).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("unfolded rnn gradients match finite differences") {
  Rng rng(22);
  NetworkSpec spec{{LayerSpec::RecurrentUnfolded(4, 6, 5, 2), LayerSpec::Affine(5, 3),
                    LayerSpec::SoftmaxOutput(3)}};
  spec.Validate();
  const ModelParams p = RandomParams(spec, rng);
  const Minibatch b = RandomBatch(7, spec.input_dim(), 3, rng);
  CHECK(ParamGradientError(spec, p, b, 25, rng) < 1e-4);
}

TEST_CASE("gradient check for every layer kind") {
  Rng rng(99);
  struct Case {
    const char* name;
    NetworkSpec spec;
  };
  const Geometry g{6, 5, 2};
  std::vector<Case> cases = {
      {"affine", {{LayerSpec::Affine(5, 4), LayerSpec::Affine(4, 3), LayerSpec::SoftmaxOutput(3)}}},
      {"sigmoid",
       {{LayerSpec::Affine(5, 4), LayerSpec::Sigmoid(4), LayerSpec::Affine(4, 3),
         LayerSpec::SoftmaxOutput(3)}}},
      {"relu",
       {{LayerSpec::Affine(5, 6), LayerSpec::Relu(6), LayerSpec::Affine(6, 3),
         LayerSpec::SoftmaxOutput(3)}}},
      {"maxout",
       {{LayerSpec::Affine(5, 6), LayerSpec::Maxout(6, 2), LayerSpec::Affine(3, 3),
         LayerSpec::SoftmaxOutput(3)}}},
      {"conv2d",
       {{LayerSpec::Conv2d(g, 3, 3, 2), LayerSpec::Sigmoid(4 * 4 * 3), LayerSpec::Affine(48, 3),
         LayerSpec::SoftmaxOutput(3)}}},
      {"maxpool",
       {{LayerSpec::Conv2d(g, 2, 2, 2), LayerSpec::MaxPool({5, 4, 2}, 2, 2),
         LayerSpec::Affine(2 * 2 * 2, 3), LayerSpec::SoftmaxOutput(3)}}},
      {"recurrent_unfolded",
       {{LayerSpec::RecurrentUnfolded(3, 6, 4), LayerSpec::Affine(4, 3),
         LayerSpec::SoftmaxOutput(3)}}},
  };
  for (auto& c : cases) {
    CAPTURE(c.name);
    c.spec.Validate();
    const ModelParams p = RandomParams(c.spec, rng);
    const Minibatch b = RandomBatch(6, c.spec.input_dim(), 3, rng);
    CHECK(ParamGradientError(c.spec, p, b, 25, rng) < 1e-4);
  }
}

TEST_CASE("input gradient through a deep mixed stack") {
  Rng rng(5);
  NetworkSpec spec{{LayerSpec::Affine(6, 8), LayerSpec::Maxout(8, 2), LayerSpec::Affine(4, 4),
                    LayerSpec::Sigmoid(4), LayerSpec::Affine(4, 3), LayerSpec::SoftmaxOutput(3)}};
  const ModelParams p = RandomParams(spec, rng);
  const Matrix x = RandomMatrix(3, 6, rng);
  const Matrix c = RandomMatrix(3, 3, rng);
  // f(x) = sum(c .* log_posteriors)
  auto f = [&](const Matrix& in) {
    return NetworkForward(spec, p, in, Mode::kEval).log_posteriors.cwiseProduct(c).sum();
  };
  StackTrace t = StackForward(spec, p, x, Mode::kEval, {}, 0, spec.layers.size());
  ModelParams grads = p.ZerosLike();
  const Matrix dx = StackBackward(spec, p, t, c, 0, spec.layers.size(), &grads, true);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Matrix xp = x, xm = x;
    xp.data()[i] += 1e-5;
    xm.data()[i] -= 1e-5;
    CHECK(hasr::testing::RelativeError(dx.data()[i], (f(xp) - f(xm)) / 2e-5) < 1e-4);
  }
}

TEST_CASE("softmax cross-entropy gradient identity") {
  Rng rng(8);
  NetworkSpec stack{{LayerSpec::SoftmaxOutput(4)}};
  ModelParams none;
  none.layers.resize(1);
  const Matrix logits = RandomMatrix(5, 4, rng, 3.0);
  const std::vector<StateId> targets = {0, 3, 1, 1, 2};
  StackTrace t = StackForward(stack, none, logits, Mode::kEval, {}, 0, 1);
  Matrix g = Matrix::Zero(5, 4);
  for (int n = 0; n < 5; ++n) g(n, targets[n]) = -1.0 / 5.0;
  ModelParams grads = none;
  const Matrix dlogits = StackBackward(stack, none, t, g, 0, 1, &grads, true);
  Matrix expect = t.output().array().exp();
  for (int n = 0; n < 5; ++n) expect(n, targets[n]) -= 1.0;
  expect /= 5.0;
  CHECK((dlogits - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("duplicated frame doubles its gradient contribution") {
  Rng rng(31);
  NetworkSpec spec = BuildFeedForward(4, {6}, Nonlinearity::kSigmoid, 0, 3);
  const ModelParams p = RandomParams(spec, rng);
  Minibatch x = RandomBatch(1, 4, 3, rng), y = RandomBatch(1, 4, 3, rng);
  Minibatch xyx;
  xyx.inputs.resize(3, 4);
  xyx.inputs << x.inputs, y.inputs, x.inputs;
  xyx.targets = {x.targets[0], y.targets[0], x.targets[0]};
  ModelParams sum3 = Backprop(spec, p, xyx).gradients;  // mean over 3
  ModelParams expect = p.ZerosLike();
  expect.Axpy(2.0 / 3.0, Backprop(spec, p, x).gradients);
  expect.Axpy(1.0 / 3.0, Backprop(spec, p, y).gradients);
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    if (!p.layers[i].weights.size()) continue;
    CHECK((sum3.layers[i].weights - expect.layers[i].weights).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((sum3.layers[i].bias - expect.layers[i].bias).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("network forward normalization, identity and composition oracle") {
  Rng rng(41);
  NetworkSpec spec = BuildFeedForward(5, {7, 6}, Nonlinearity::kSigmoid, 0, 4);
  const ModelParams p = RandomParams(spec, rng);
  const Matrix x = RandomMatrix(9, 5, rng);
  const auto fwd = NetworkForward(spec, p, x, Mode::kEval);
  for (Eigen::Index r = 0; r < 9; ++r) {
    CHECK(std::abs(fwd.log_posteriors.row(r).array().exp().sum() - 1.0) < 1e-9);
    CHECK((fwd.log_posteriors.row(r).array().exp() > 0.0).all());
  }

  // Independent layer-by-layer evaluation with explicit loops.
  for (Eigen::Index r = 0; r < 9; ++r) {
    std::vector<double> h(x.row(r).data(), x.row(r).data() + 5);
    for (std::size_t li = 0; li < spec.layers.size(); ++li) {
      const auto& l = spec.layers[li];
      if (l.kind == LayerKind::kAffine) {
        std::vector<double> o(l.output_dim);
        for (int i = 0; i < l.output_dim; ++i) {
          double s = p.layers[li].bias(i);
          for (int j = 0; j < l.input_dim; ++j) s += p.layers[li].weights(i, j) * h[j];
          o[i] = s;
        }
        h = o;
      } else if (l.kind == LayerKind::kSigmoid) {
        for (auto& v : h) v = 1.0 / (1.0 + std::exp(-v));
      }
    }
    for (int k = 0; k < 4; ++k) CHECK(std::abs(fwd.logits(r, k) - h[k]) < 1e-10);
  }

  NetworkSpec ident{{LayerSpec::Affine(3, 3), LayerSpec::SoftmaxOutput(3)}};
  ModelParams ip = InitParams(ident, 1);
  ip.layers[0].weights = Matrix::Identity(3, 3);
  const Matrix x3 = RandomMatrix(4, 3, rng);
  CHECK(NetworkForward(ident, ip, x3, Mode::kEval).logits == x3);
}

TEST_CASE("eval forward is a pure function") {
  Rng rng(42);
  NetworkSpec spec = BuildFeedForward(5, {8}, Nonlinearity::kMaxout, 4, 3);
  const ModelParams p = RandomParams(spec, rng);
  const Matrix x = RandomMatrix(10, 5, rng);
  Rng drop(1);
  const Matrix a = NetworkForward(spec, p, x, Mode::kEval, {0.5, &drop}).log_posteriors;
  const Matrix b = NetworkForward(spec, p, x, Mode::kEval, {0.5, &drop}).log_posteriors;
  CHECK(a == b);
}

TEST_CASE("network forward errors") {
  Rng rng(43);
  NetworkSpec spec = BuildFeedForward(5, {8}, Nonlinearity::kSigmoid, 0, 3);
  ModelParams p = InitParams(spec, 3);
  CHECK_THROWS_AS(NetworkForward(spec, p, RandomMatrix(2, 6, rng), Mode::kEval), ShapeError);
  p.layers[0].weights(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    NetworkForward(spec, p, RandomMatrix(2, 5, rng), Mode::kEval);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("layer 0 (affine)") != std::string::npos);
  }
}

TEST_CASE("layer spec validation") {
  NetworkSpec bad_chain{{LayerSpec::Affine(4, 5), LayerSpec::Affine(4, 3),
                         LayerSpec::SoftmaxOutput(3)}};
  CHECK_THROWS_AS(bad_chain.Validate(), ShapeError);
  NetworkSpec no_softmax{{LayerSpec::Affine(4, 3)}};
  CHECK_THROWS_AS(no_softmax.Validate(), ConfigError);
  NetworkSpec two_softmax{{LayerSpec::SoftmaxOutput(3), LayerSpec::SoftmaxOutput(3)}};
  CHECK_THROWS_AS(two_softmax.Validate(), ConfigError);
  NetworkSpec maxout_bad{{LayerSpec::Affine(4, 5), LayerSpec::Maxout(5, 2),
                          LayerSpec::SoftmaxOutput(2)}};
  CHECK_THROWS(maxout_bad.Validate());
  NetworkSpec conv_big{{LayerSpec::Conv2d({8, 8, 1}, 2, 9, 9)}};
  CHECK_THROWS_AS(conv_big.ValidateStack(), ShapeError);

  NetworkSpec no_bottleneck{{LayerSpec::Affine(4, 3), LayerSpec::SoftmaxOutput(3)}};
  CHECK_THROWS_AS(no_bottleneck.OutputAffineIndex(), ConfigError);
  CHECK(BuildFeedForward(10, {8}, Nonlinearity::kSigmoid, 4, 3).BottleneckDim() == 4);
}

TEST_CASE("layer string parser") {
  const NetworkSpec s = ParseLayerString(
      "conv:4:9:9 sigmoid maxpool:2:2 conv:6:4:1 sigmoid affine:32 sigmoid affine:16 affine:30 "
      "softmax",
      40 * 11 * 3, Geometry{40, 11, 3});
  CHECK(s.layers[2].OutputGeometry() == Geometry{16, 1, 4});
  CHECK(s.output_dim() == 30);
  CHECK(ParseLayerString(DescribeNetwork(s), 40 * 11 * 3, Geometry{40, 11, 3}) == s);

  const NetworkSpec r = ParseLayerString("rnn:16:6 affine:8 sigmoid affine:5 softmax", 6 * 4 + 3,
                                         std::nullopt, 4);
  CHECK(r.layers[0].AuxDim() == 3);
  CHECK_THROWS_AS(ParseLayerString("affine:4 bogus softmax", 3), ConfigError);
}

TEST_CASE("dropout contract") {
  Rng rng(51);
  const Matrix a = RandomMatrix(3, 4, rng);
  CHECK(ApplyDropout(a, 0.0, rng, Mode::kTrain) == a);
  CHECK(ApplyDropout(a, 0.0, rng, Mode::kEval) == a);
  CHECK(ApplyDropout(a, 0.7, rng, Mode::kEval) == a);
  CHECK_THROWS_AS(ApplyDropout(a, 1.0, rng, Mode::kTrain), ConfigError);
  CHECK_THROWS_AS(ApplyDropout(a, -0.1, rng, Mode::kTrain), ConfigError);

  Matrix v(1, 5);
  v << 1.0, -2.0, 0.5, 3.0, 10.0;
  Matrix sum = Matrix::Zero(1, 5);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += ApplyDropout(v, 0.5, rng, Mode::kTrain);
  sum /= draws;
  for (int j = 0; j < 5; ++j) CHECK(std::abs(sum(0, j) - v(0, j)) <= 0.05 * std::abs(v(0, j)));

  Matrix mask;
  const Matrix out = ApplyDropout(v, 0.5, rng, Mode::kTrain, &mask);
  CHECK(out == v.cwiseProduct(mask));
  CHECK(((mask.array() == 0.0) || (mask.array() == 2.0)).all());
}

TEST_CASE("sqrt2 maxout width equalizes parameter counts") {
  // Hidden-to-hidden matrices dominate at these widths; the input and
  // output layers shift the balance for narrow nets.
  for (int n : {1024, 2048}) {
    const int in = 440, outputs = 30;
    const NetworkSpec sig =
        BuildFeedForward(in, std::vector<int>(6, n), Nonlinearity::kSigmoid, 0, outputs);
    const int width = EqualizedMaxoutWidth(n);
    const int raw = static_cast<int>(std::ceil(std::sqrt(2.0) * n));
    CHECK(width == raw + raw % 2);
    const NetworkSpec mo =
        BuildFeedForward(in, std::vector<int>(6, width), Nonlinearity::kMaxout, 0, outputs);
    const double ratio =
        static_cast<double>(CountParams(mo)) / static_cast<double>(CountParams(sig));
    CAPTURE(n);
    CAPTURE(ratio);
    CHECK(std::abs(ratio - 1.0) < 0.05);
  }
}

TEST_CASE("NNET container round trip") {
  Rng rng(61);
  CnnConfig cfg;
  cfg.input = {12, 7, 3};
  cfg.conv1_filters = 4;
  cfg.conv1_window_h = 5;
  cfg.conv1_window_w = 5;
  cfg.conv2_filters = 4;
  cfg.conv2_window_h = 2;
  cfg.conv2_window_w = 1;
  cfg.hidden = {8};
  cfg.bottleneck = 6;
  cfg.num_outputs = 5;
  const NetworkSpec cnn = BuildCnn(cfg);
  RnnConfig rc;
  rc.frame_dim = 3;
  rc.recurrent_dim = 5;
  rc.aux_dim = 2;
  rc.hidden = {6};
  rc.bottleneck = 4;
  rc.num_outputs = 5;
  const NetworkSpec rnn = BuildUnfoldedRnn(rc);
  for (const NetworkSpec& spec : {cnn, rnn}) {
    const ModelParams p = RandomParams(spec, rng);
    std::stringstream ss;
    WriteNnet(ss, spec, p);
    const std::string bytes = ss.str();
    CHECK(bytes.substr(0, 4) == "NNET");
    NetworkSpec s2;
    ModelParams p2;
    ReadNnet(ss, &s2, &p2);
    CHECK(s2 == spec);
    CHECK(p2 == p);
    std::stringstream again;
    WriteNnet(again, s2, p2);
    CHECK(again.str() == bytes);
  }
  std::stringstream garbage("XXXX1234");
  NetworkSpec s;
  ModelParams p;
  CHECK_THROWS_AS(ReadNnet(garbage, &s, &p), ParseError);
}
