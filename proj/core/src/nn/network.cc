// core/src/nn/network.cc

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

#include "hasr/nn/network.h"

#include <cmath>

#include "hasr/common/errors.h"
#include "kernels.h"

namespace hasr::nn {

Matrix Minibatch::NetworkInput() const {
  if (speaker_embedding.size() == 0) return inputs;
  if (speaker_embedding.rows() != inputs.rows()) {
    throw ShapeError("speaker embedding rows do not match minibatch frames");
  }
  Matrix x(inputs.rows(), inputs.cols() + speaker_embedding.cols());
  x << inputs, speaker_embedding;
  return x;
}

namespace {

std::string LayerName(std::size_t i, const LayerSpec& l) {
  return "layer " + std::to_string(i) + " (" + LayerKindName(l.kind) + ")";
}

Matrix ConvForwardBatch(const Matrix& in, const ConvShape& shape, const LayerParams& p) {
  const Geometry out_g = shape.Output();
  Matrix out(in.rows(), out_g.Size());
  Matrix patches;
  const Matrix wt = p.weights.transpose();
  for (Eigen::Index n = 0; n < in.rows(); ++n) {
    internal::Im2Col(in.row(n).data(), shape, &patches);
    Eigen::Map<Matrix> dst(out.row(n).data(), patches.rows(), shape.num_filters);
    dst.noalias() = patches * wt;
    dst.rowwise() += p.bias.transpose();
  }
  return out;
}

}  // namespace

StackTrace StackForward(const NetworkSpec& spec, const ModelParams& params, const Matrix& input,
                        Mode mode, DropoutState dropout, std::size_t begin, std::size_t end) {
  if (end > spec.layers.size() || begin > end) throw LogicError("StackForward: bad layer range");
  if (params.layers.size() != spec.layers.size()) {
    throw ShapeError("StackForward: parameter/layer count mismatch");
  }
  if (begin < end && input.cols() != spec.layers[begin].input_dim) {
    throw ShapeError("input dimension " + std::to_string(input.cols()) + " does not match " +
                     LayerName(begin, spec.layers[begin]) + " input_dim " +
                     std::to_string(spec.layers[begin].input_dim));
  }
  const bool use_dropout = mode == Mode::kTrain && dropout.rate > 0.0;
  if (use_dropout && dropout.rng == nullptr) {
    throw ConfigError("train-mode dropout requires a random generator");
  }
  StackTrace trace;
  trace.activations.reserve(end - begin + 1);
  trace.layers.resize(end - begin);
  trace.activations.push_back(input);
  for (std::size_t i = begin; i < end; ++i) {
    const LayerSpec& l = spec.layers[i];
    const LayerParams& p = params.layers[i];
    LayerTrace& lt = trace.layers[i - begin];
    const Matrix& x = trace.activations.back();
    Matrix y;
    switch (l.kind) {
      case LayerKind::kAffine:
        y.noalias() = x * p.weights.transpose();
        y.rowwise() += p.bias.transpose();
        break;
      case LayerKind::kSigmoid:
        y = x.unaryExpr([](double v) { return Sigmoid(v); });
        break;
      case LayerKind::kRelu:
        y = x.cwiseMax(0.0);
        break;
      case LayerKind::kMaxout: {
        const int g = l.group_size;
        y.resize(x.rows(), l.output_dim);
        lt.winners.resize(static_cast<std::size_t>(x.rows()) * l.output_dim);
        for (Eigen::Index n = 0; n < x.rows(); ++n) {
          const double* row = x.row(n).data();
          for (int j = 0; j < l.output_dim; ++j) {
            int best = j * g;
            for (int k = j * g + 1; k < (j + 1) * g; ++k) {
              if (row[k] > row[best]) best = k;
            }
            y(n, j) = row[best];
            lt.winners[n * l.output_dim + j] = best;
          }
        }
        if (use_dropout) y = ApplyDropout(y, dropout.rate, *dropout.rng, mode, &lt.dropout_mask);
        break;
      }
      case LayerKind::kConv2d:
        y = ConvForwardBatch(x, ConvShape::FromLayer(l), p);
        break;
      case LayerKind::kMaxPool: {
        y.resize(x.rows(), l.output_dim);
        lt.winners.resize(static_cast<std::size_t>(x.rows()) * l.output_dim);
        for (Eigen::Index n = 0; n < x.rows(); ++n) {
          internal::MaxPoolRow(x.row(n).data(), l.input_geometry, l.pool_h, l.pool_w,
                               y.row(n).data(), lt.winners.data() + n * l.output_dim);
        }
        break;
      }
      case LayerKind::kRecurrentUnfolded: {
        const RecurrentShape s = RecurrentShape::FromLayer(l);
        const Eigen::Index n_rows = x.rows();
        const Matrix w_frame_t = p.weights.leftCols(s.frame_dim).transpose();
        const Matrix u_t = p.recurrent.transpose();
        Matrix fixed(n_rows, s.hidden_dim);
        fixed.rowwise() = p.bias.transpose();
        if (s.aux_dim > 0) {
          fixed.noalias() += x.rightCols(s.aux_dim) * p.weights.rightCols(s.aux_dim).transpose();
        }
        lt.rnn_states.reserve(s.steps + 1);
        lt.rnn_states.push_back(Matrix::Zero(n_rows, s.hidden_dim));
        for (int k = s.steps - 1; k >= 0; --k) {
          Matrix a = fixed;
          a.noalias() += x.middleCols(k * s.frame_dim, s.frame_dim) * w_frame_t;
          a.noalias() += lt.rnn_states.back() * u_t;
          lt.rnn_states.push_back(a.unaryExpr([](double v) { return Sigmoid(v); }));
        }
        y = lt.rnn_states.back();
        break;
      }
      case LayerKind::kSoftmaxOutput:
        y = LogSoftmaxRows(x);
        break;
    }
    if (!y.allFinite()) {
      throw NumericError("non-finite activation produced by " + LayerName(i, l));
    }
    trace.activations.push_back(std::move(y));
  }
  return trace;
}

Matrix StackBackward(const NetworkSpec& spec, const ModelParams& params, const StackTrace& trace,
                     const Matrix& grad_output, std::size_t begin, std::size_t end,
                     ModelParams* grads, bool want_input_grad) {
  if (trace.layers.size() != end - begin) throw LogicError("StackBackward: trace/range mismatch");
  Matrix g = grad_output;
  for (std::size_t i = end; i-- > begin;) {
    const LayerSpec& l = spec.layers[i];
    const LayerParams& p = params.layers[i];
    LayerParams& gp = grads->layers[i];
    const LayerTrace& lt = trace.layers[i - begin];
    const Matrix& x = trace.activations[i - begin];
    const Matrix& y = trace.activations[i - begin + 1];
    const bool need_dx = want_input_grad || i > begin;
    Matrix dx;
    switch (l.kind) {
      case LayerKind::kAffine:
        gp.weights.noalias() += g.transpose() * x;
        gp.bias.noalias() += g.colwise().sum().transpose();
        if (need_dx) dx.noalias() = g * p.weights;
        break;
      case LayerKind::kSigmoid:
        dx = g.array() * y.array() * (1.0 - y.array());
        break;
      case LayerKind::kRelu:
        dx = (x.array() > 0.0).select(g, 0.0);
        break;
      case LayerKind::kMaxout: {
        if (lt.dropout_mask.size()) g = g.cwiseProduct(lt.dropout_mask);
        dx = Matrix::Zero(x.rows(), x.cols());
        for (Eigen::Index n = 0; n < x.rows(); ++n) {
          for (int j = 0; j < l.output_dim; ++j) {
            dx(n, lt.winners[n * l.output_dim + j]) = g(n, j);
          }
        }
        break;
      }
      case LayerKind::kConv2d: {
        const ConvShape s = ConvShape::FromLayer(l);
        const Geometry out_g = s.Output();
        const int positions = out_g.height * out_g.width;
        Matrix patches;
        Matrix dpatches;
        if (need_dx) dx = Matrix::Zero(x.rows(), x.cols());
        for (Eigen::Index n = 0; n < x.rows(); ++n) {
          internal::Im2Col(x.row(n).data(), s, &patches);
          Eigen::Map<const Matrix> gn(g.row(n).data(), positions, s.num_filters);
          gp.weights.noalias() += gn.transpose() * patches;
          gp.bias.noalias() += gn.colwise().sum().transpose();
          if (need_dx) {
            dpatches.noalias() = gn * p.weights;
            internal::Col2ImAdd(dpatches, s, dx.row(n).data());
          }
        }
        break;
      }
      case LayerKind::kMaxPool:
        dx = Matrix::Zero(x.rows(), x.cols());
        for (Eigen::Index n = 0; n < x.rows(); ++n) {
          for (int j = 0; j < l.output_dim; ++j) {
            dx(n, lt.winners[n * l.output_dim + j]) += g(n, j);
          }
        }
        break;
      case LayerKind::kRecurrentUnfolded: {
        const RecurrentShape s = RecurrentShape::FromLayer(l);
        if (need_dx) dx = Matrix::Zero(x.rows(), x.cols());
        Matrix d_aux;
        if (s.aux_dim > 0 && need_dx) d_aux = Matrix::Zero(x.rows(), s.aux_dim);
        Matrix gh = g;
        for (int step = s.steps; step >= 1; --step) {
          const int k = s.steps - step;  // window frame consumed at this step
          const Matrix& h = lt.rnn_states[step];
          const Matrix& h_prev = lt.rnn_states[step - 1];
          const Matrix da = gh.array() * h.array() * (1.0 - h.array());
          gp.weights.leftCols(s.frame_dim).noalias() +=
              da.transpose() * x.middleCols(k * s.frame_dim, s.frame_dim);
          if (s.aux_dim > 0) {
            gp.weights.rightCols(s.aux_dim).noalias() += da.transpose() * x.rightCols(s.aux_dim);
          }
          gp.bias.noalias() += da.colwise().sum().transpose();
          gp.recurrent.noalias() += da.transpose() * h_prev;
          if (need_dx) {
            dx.middleCols(k * s.frame_dim, s.frame_dim).noalias() +=
                da * p.weights.leftCols(s.frame_dim);
            if (s.aux_dim > 0) d_aux.noalias() += da * p.weights.rightCols(s.aux_dim);
          }
          gh.noalias() = da * p.recurrent;
        }
        if (s.aux_dim > 0 && need_dx) dx.rightCols(s.aux_dim) = d_aux;
        break;
      }
      case LayerKind::kSoftmaxOutput: {
        // y holds log-probabilities.
        const Matrix prob = y.array().exp();
        const Vector row_sums = g.rowwise().sum();
        dx = g - (prob.array().colwise() * row_sums.array()).matrix();
        break;
      }
    }
    if (need_dx) g = std::move(dx);
  }
  return want_input_grad ? g : Matrix();
}

ForwardResult NetworkForward(const NetworkSpec& spec, const ModelParams& params,
                             const Matrix& inputs, Mode mode, DropoutState dropout) {
  spec.Validate();
  if (inputs.cols() != spec.input_dim()) {
    throw ShapeError("minibatch input dimension " + std::to_string(inputs.cols()) +
                     " does not match network input " + std::to_string(spec.input_dim()));
  }
  ForwardResult r;
  r.trace = StackForward(spec, params, inputs, mode, dropout, 0, spec.layers.size());
  const auto& acts = r.trace.activations;
  r.logits = acts[acts.size() - 2];
  r.log_posteriors = acts.back();
  return r;
}

StepStats ScoreLogPosteriors(const Matrix& log_posteriors, const std::vector<StateId>& targets) {
  if (static_cast<std::size_t>(log_posteriors.rows()) != targets.size()) {
    throw ShapeError("target count does not match frame count");
  }
  StepStats s;
  s.frames = targets.size();
  for (Eigen::Index n = 0; n < log_posteriors.rows(); ++n) {
    const StateId t = targets[n];
    if (t < 0 || t >= log_posteriors.cols()) {
      throw DataError("target id " + std::to_string(t) + " outside [0, " +
                      std::to_string(log_posteriors.cols()) + ")");
    }
    s.loss_sum -= log_posteriors(n, t);
    Eigen::Index best;
    log_posteriors.row(n).maxCoeff(&best);
    if (best == t) ++s.correct;
  }
  return s;
}

BackpropResult Backprop(const NetworkSpec& spec, const ModelParams& params,
                        const Minibatch& batch, DropoutState dropout) {
  if (batch.size() == 0) throw DataError("empty minibatch");
  const Matrix inputs = batch.NetworkInput();
  ForwardResult fwd = NetworkForward(spec, params, inputs, Mode::kTrain, dropout);
  const StepStats stats = ScoreLogPosteriors(fwd.log_posteriors, batch.targets);
  const double n = static_cast<double>(batch.size());

  // d(mean CE)/d logits = (posterior - one_hot) / N
  Matrix dlogits = fwd.log_posteriors.array().exp();
  for (Eigen::Index r = 0; r < dlogits.rows(); ++r) dlogits(r, batch.targets[r]) -= 1.0;
  dlogits /= n;

  BackpropResult out;
  out.gradients = params.ZerosLike();
  const std::size_t last = spec.layers.size() - 1;
  StackTrace& trace = fwd.trace;
  // Drop the softmax layer from the trace and backpropagate from its input.
  trace.activations.pop_back();
  trace.layers.pop_back();
  StackBackward(spec, params, trace, dlogits, 0, last, &out.gradients, false);
  out.loss = stats.loss_sum / n;
  out.correct = stats.correct;
  return out;
}

Network::Network(NetworkSpec spec, ModelParams params)
    : spec_(std::move(spec)), params_(std::move(params)) {
  spec_.Validate();
  CheckParamsMatch(spec_, params_);
}

Network Network::Random(NetworkSpec spec, std::uint64_t seed) {
  spec.Validate();
  ModelParams params = InitParams(spec, seed);
  return Network(std::move(spec), std::move(params));
}

Matrix Network::Logits(const Matrix& inputs) const {
  return NetworkForward(spec_, params_, inputs, Mode::kEval).logits;
}

Matrix Network::LogPosteriors(const Matrix& inputs) const {
  return NetworkForward(spec_, params_, inputs, Mode::kEval).log_posteriors;
}

Matrix Network::Bottleneck(const Matrix& inputs) const {
  const std::size_t out_idx = spec_.OutputAffineIndex();
  return StackForward(spec_, params_, inputs, Mode::kEval, {}, 0, out_idx).output();
}

StepStats Network::TrainStep(const Minibatch& batch, double learning_rate,
                             DropoutState dropout) {
  BackpropResult br = Backprop(spec_, params_, batch, dropout);
  if (learning_rate != 0.0) params_.Axpy(-learning_rate, br.gradients);
  StepStats s;
  s.frames = batch.size();
  s.loss_sum = br.loss * static_cast<double>(batch.size());
  s.correct = br.correct;
  return s;
}

StepStats Network::Evaluate(const Minibatch& batch) const {
  return ScoreLogPosteriors(LogPosteriors(batch.NetworkInput()), batch.targets);
}

}  // namespace hasr::nn
