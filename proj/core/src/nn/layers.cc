// core/src/nn/layers.cc

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

#include "hasr/nn/layers.h"

#include <cmath>
#include <limits>

#include "hasr/common/errors.h"
#include "kernels.h"

namespace hasr::nn {

MaxoutResult MaxoutForward(const Vector& pre, int group_size) {
  if (group_size < 1 || pre.size() % group_size != 0) {
    throw ShapeError("maxout: length " + std::to_string(pre.size()) +
                     " not divisible by group size " + std::to_string(group_size));
  }
  const Eigen::Index groups = pre.size() / group_size;
  MaxoutResult r;
  r.outputs.resize(groups);
  r.winners.resize(groups);
  for (Eigen::Index j = 0; j < groups; ++j) {
    const Eigen::Index base = j * group_size;
    Eigen::Index best = base;
    for (Eigen::Index i = base + 1; i < base + group_size; ++i) {
      if (pre(i) > pre(best)) best = i;
    }
    r.outputs(j) = pre(best);
    r.winners[j] = static_cast<int>(best);
  }
  return r;
}

Vector MaxoutBackward(const Vector& grad_out, const std::vector<int>& winners, int group_size) {
  if (group_size < 1 || static_cast<std::size_t>(grad_out.size()) != winners.size()) {
    throw ShapeError("maxout backward: gradient and winner counts differ");
  }
  Vector grad_in = Vector::Zero(grad_out.size() * group_size);
  for (Eigen::Index j = 0; j < grad_out.size(); ++j) {
    const int w = winners[j];
    if (w < j * group_size || w >= (j + 1) * group_size) {
      throw LogicError("maxout backward: winner " + std::to_string(w) + " outside group " +
                       std::to_string(j));
    }
    grad_in(w) = grad_out(j);
  }
  return grad_in;
}

ConvShape ConvShape::FromLayer(const LayerSpec& l) {
  return {l.input_geometry, l.num_filters, l.window_h, l.window_w, l.stride};
}

Geometry ConvShape::Output() const {
  return {(input.height - window_h) / stride + 1, (input.width - window_w) / stride + 1,
          num_filters};
}

namespace internal {

void Im2Col(const double* input, const ConvShape& s, Matrix* patches) {
  const Geometry out = s.Output();
  const int c = s.input.channels;
  patches->resize(out.height * out.width, s.Taps());
  for (int oh = 0; oh < out.height; ++oh) {
    for (int ow = 0; ow < out.width; ++ow) {
      double* dst = patches->row(oh * out.width + ow).data();
      for (int dh = 0; dh < s.window_h; ++dh) {
        const int h = oh * s.stride + dh;
        // (dw, c) taps are contiguous in the input for a fixed row h.
        const double* src = input + (h * s.input.width + ow * s.stride) * c;
        std::copy(src, src + s.window_w * c, dst + dh * s.window_w * c);
      }
    }
  }
}

void Col2ImAdd(const Matrix& patch_grads, const ConvShape& s, double* input_grad) {
  const Geometry out = s.Output();
  const int c = s.input.channels;
  for (int oh = 0; oh < out.height; ++oh) {
    for (int ow = 0; ow < out.width; ++ow) {
      const double* src = patch_grads.row(oh * out.width + ow).data();
      for (int dh = 0; dh < s.window_h; ++dh) {
        const int h = oh * s.stride + dh;
        double* dst = input_grad + (h * s.input.width + ow * s.stride) * c;
        const double* row = src + dh * s.window_w * c;
        for (int k = 0; k < s.window_w * c; ++k) dst[k] += row[k];
      }
    }
  }
}

void MaxPoolRow(const double* input, const Geometry& g, int pool_h, int pool_w, double* output,
                int* winners) {
  const int oh_n = g.height / pool_h;
  const int ow_n = g.width / pool_w;
  const int c_n = g.channels;
  for (int oh = 0; oh < oh_n; ++oh) {
    for (int ow = 0; ow < ow_n; ++ow) {
      for (int c = 0; c < c_n; ++c) {
        int best = -1;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int dh = 0; dh < pool_h; ++dh) {
          for (int dw = 0; dw < pool_w; ++dw) {
            const int idx = ((oh * pool_h + dh) * g.width + (ow * pool_w + dw)) * c_n + c;
            if (best < 0 || input[idx] > best_val) {
              best = idx;
              best_val = input[idx];
            }
          }
        }
        const int o = (oh * ow_n + ow) * c_n + c;
        output[o] = best_val;
        winners[o] = best;
      }
    }
  }
}

}  // namespace internal

Vector Conv2dForward(const Vector& input, const ConvShape& shape, const Matrix& filters,
                     const Vector& bias) {
  if (input.size() != shape.input.Size()) {
    throw ShapeError("conv2d: input length does not match geometry");
  }
  if (shape.input.height < shape.window_h || shape.input.width < shape.window_w) {
    throw ShapeError("conv2d: window " + std::to_string(shape.window_h) + "x" +
                     std::to_string(shape.window_w) + " larger than input " +
                     std::to_string(shape.input.height) + "x" + std::to_string(shape.input.width));
  }
  if (filters.rows() != shape.num_filters || filters.cols() != shape.Taps() ||
      bias.size() != shape.num_filters) {
    throw ShapeError("conv2d: filter bank shape mismatch");
  }
  Matrix patches;
  internal::Im2Col(input.data(), shape, &patches);
  Matrix out = patches * filters.transpose();
  out.rowwise() += bias.transpose();
  return Eigen::Map<const Vector>(out.data(), out.size());
}

PoolResult MaxPoolForward(const Vector& input, const Geometry& g, int pool_h, int pool_w) {
  if (input.size() != g.Size()) throw ShapeError("maxpool: input length does not match geometry");
  if (pool_h <= 0 || pool_w <= 0 || pool_h > g.height || pool_w > g.width) {
    throw ShapeError("maxpool: pooling window must fit the input block");
  }
  const Geometry out{g.height / pool_h, g.width / pool_w, g.channels};
  PoolResult r;
  r.outputs.resize(out.Size());
  r.winners.resize(out.Size());
  internal::MaxPoolRow(input.data(), g, pool_h, pool_w, r.outputs.data(), r.winners.data());
  return r;
}

RecurrentShape RecurrentShape::FromLayer(const LayerSpec& l) {
  return {l.steps, l.frame_dim, l.AuxDim(), l.output_dim};
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<Vector> UnfoldedRnnStates(const Vector& window, const RecurrentShape& s,
                                      const Matrix& weights, const Matrix& recurrent,
                                      const Vector& bias) {
  if (window.size() != s.steps * s.frame_dim + s.aux_dim) {
    throw ShapeError("unfolded rnn: window holds " + std::to_string(window.size()) +
                     " values, expected " + std::to_string(s.steps) + " frames of " +
                     std::to_string(s.frame_dim) + " plus " + std::to_string(s.aux_dim));
  }
  if (weights.rows() != s.hidden_dim || weights.cols() != s.frame_dim + s.aux_dim ||
      recurrent.rows() != s.hidden_dim || recurrent.cols() != s.hidden_dim ||
      bias.size() != s.hidden_dim) {
    throw ShapeError("unfolded rnn: parameter shape mismatch");
  }
  std::vector<Vector> states;
  states.reserve(s.steps + 1);
  states.push_back(Vector::Zero(s.hidden_dim));
  const auto w_frame = weights.leftCols(s.frame_dim);
  Vector aux_term = bias;
  if (s.aux_dim > 0) {
    aux_term += weights.rightCols(s.aux_dim) * window.tail(s.aux_dim);
  }
  for (int k = s.steps - 1; k >= 0; --k) {
    Vector a = w_frame * window.segment(k * s.frame_dim, s.frame_dim) + aux_term +
               recurrent * states.back();
    states.push_back(a.unaryExpr([](double v) { return Sigmoid(v); }));
  }
  return states;
}

Vector UnfoldedRnnForward(const Vector& window, const RecurrentShape& shape,
                          const Matrix& weights, const Matrix& recurrent, const Vector& bias) {
  return UnfoldedRnnStates(window, shape, weights, recurrent, bias).back();
}

Matrix LogSoftmaxRows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double m = logits.row(r).maxCoeff();
    const double lse = m + std::log((logits.row(r).array() - m).exp().sum());
    out.row(r) = logits.row(r).array() - lse;
  }
  return out;
}

Matrix ApplyDropout(const Matrix& activations, double rate, Rng& rng, Mode mode, Matrix* mask) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout rate must lie in [0, 1), got " + std::to_string(rate));
  }
  if (mode == Mode::kEval || rate == 0.0) {
    if (mask) *mask = Matrix::Ones(activations.rows(), activations.cols());
    return activations;
  }
  const double keep_scale = 1.0 / (1.0 - rate);
  Matrix m(activations.rows(), activations.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = Uniform01(rng) < rate ? 0.0 : keep_scale;
    }
  }
  Matrix out = activations.cwiseProduct(m);
  if (mask) *mask = std::move(m);
  return out;
}

}  // namespace hasr::nn
