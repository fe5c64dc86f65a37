// core/src/nn/model_params.cc

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

#include "hasr/nn/model_params.h"

#include <cmath>

#include "hasr/common/errors.h"

namespace hasr::nn {

bool LayerParams::AllFinite() const {
  return weights.allFinite() && bias.allFinite() && recurrent.allFinite();
}

bool LayerParams::operator==(const LayerParams& other) const {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  };
  return same(weights, other.weights) && same(bias, other.bias) &&
         same(recurrent, other.recurrent);
}

bool ModelParams::AllFinite() const {
  for (const auto& l : layers) {
    if (!l.AllFinite()) return false;
  }
  return true;
}

ModelParams ModelParams::ZerosLike() const {
  ModelParams z;
  z.layers.reserve(layers.size());
  for (const auto& l : layers) {
    LayerParams p;
    p.weights = Matrix::Zero(l.weights.rows(), l.weights.cols());
    p.bias = Vector::Zero(l.bias.size());
    p.recurrent = Matrix::Zero(l.recurrent.rows(), l.recurrent.cols());
    z.layers.push_back(std::move(p));
  }
  return z;
}

void ModelParams::Axpy(double alpha, const ModelParams& other) {
  if (other.layers.size() != layers.size()) throw ShapeError("Axpy: layer count mismatch");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto& a = layers[i];
    const auto& b = other.layers[i];
    if (a.weights.size()) a.weights.noalias() += alpha * b.weights;
    if (a.bias.size()) a.bias.noalias() += alpha * b.bias;
    if (a.recurrent.size()) a.recurrent.noalias() += alpha * b.recurrent;
  }
}

bool ModelParams::operator==(const ModelParams& other) const { return layers == other.layers; }

namespace {

Matrix UniformMatrix(Eigen::Index rows, Eigen::Index cols, double limit, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = UniformReal(rng, -limit, limit);
  }
  return m;
}

double GlorotLimit(int fan_in, int fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

}  // namespace

LayerParams InitLayerParams(const LayerSpec& l, Rng& rng) {
  LayerParams p;
  switch (l.kind) {
    case LayerKind::kAffine:
      p.weights = UniformMatrix(l.output_dim, l.input_dim, GlorotLimit(l.input_dim, l.output_dim),
                                rng);
      p.bias = Vector::Zero(l.output_dim);
      break;
    case LayerKind::kConv2d: {
      const int taps = l.window_h * l.window_w * l.input_geometry.channels;
      p.weights = UniformMatrix(l.num_filters, taps, GlorotLimit(taps, l.num_filters), rng);
      p.bias = Vector::Zero(l.num_filters);
      break;
    }
    case LayerKind::kRecurrentUnfolded: {
      const int in = l.frame_dim + l.AuxDim();
      p.weights = UniformMatrix(l.output_dim, in, GlorotLimit(in, l.output_dim), rng);
      p.recurrent = UniformMatrix(l.output_dim, l.output_dim,
                                  GlorotLimit(l.output_dim, l.output_dim), rng);
      p.bias = Vector::Zero(l.output_dim);
      break;
    }
    default:
      break;
  }
  return p;
}

ModelParams InitParams(const NetworkSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  ModelParams params;
  params.layers.reserve(spec.layers.size());
  for (const auto& l : spec.layers) params.layers.push_back(InitLayerParams(l, rng));
  return params;
}

void CheckParamsMatch(const NetworkSpec& spec, const ModelParams& params) {
  if (spec.layers.size() != params.layers.size()) {
    throw ShapeError("parameter layer count " + std::to_string(params.layers.size()) +
                     " does not match network layer count " + std::to_string(spec.layers.size()));
  }
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    const auto& p = params.layers[i];
    auto fail = [&](const std::string& what) {
      throw ShapeError("layer " + std::to_string(i) + " (" + LayerKindName(l.kind) + "): " + what);
    };
    switch (l.kind) {
      case LayerKind::kAffine:
        if (p.weights.rows() != l.output_dim || p.weights.cols() != l.input_dim) {
          fail("weight matrix shape mismatch");
        }
        if (p.bias.size() != l.output_dim) fail("bias size mismatch");
        break;
      case LayerKind::kConv2d:
        if (p.weights.rows() != l.num_filters ||
            p.weights.cols() != l.window_h * l.window_w * l.input_geometry.channels) {
          fail("filter bank shape mismatch");
        }
        if (p.bias.size() != l.num_filters) fail("bias size mismatch");
        break;
      case LayerKind::kRecurrentUnfolded:
        if (p.weights.rows() != l.output_dim || p.weights.cols() != l.frame_dim + l.AuxDim()) {
          fail("input weight shape mismatch");
        }
        if (p.recurrent.rows() != l.output_dim || p.recurrent.cols() != l.output_dim) {
          fail("recurrence matrix shape mismatch");
        }
        if (p.bias.size() != l.output_dim) fail("bias size mismatch");
        break;
      default:
        if (!p.empty()) fail("parameter-free layer carries parameters");
    }
  }
}

}  // namespace hasr::nn
