// core/include/hasr/nn/model_params.h

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

#ifndef HASR_NN_MODEL_PARAMS_H_
#define HASR_NN_MODEL_PARAMS_H_

#include <cstdint>
#include <vector>

#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/nn/layer_spec.h"

namespace hasr::nn {

// Weights of one layer. Empty for parameter-free layers.
//   affine:    weights output_dim × input_dim, bias output_dim
//   conv2d:    weights num_filters × (window_h·window_w·channels), bias num_filters
//   recurrent: weights hidden × (frame_dim + aux), recurrent hidden × hidden, bias hidden
struct LayerParams {
  Matrix weights;
  Vector bias;
  Matrix recurrent;

  bool empty() const { return weights.size() == 0 && bias.size() == 0 && recurrent.size() == 0; }
  bool AllFinite() const;
  bool operator==(const LayerParams& other) const;
};

// Parameters of a whole network; gradients use the same type.
struct ModelParams {
  std::vector<LayerParams> layers;

  bool AllFinite() const;
  // Zero-valued parameters with the same shapes.
  ModelParams ZerosLike() const;
  // this += alpha * other
  void Axpy(double alpha, const ModelParams& other);
  bool operator==(const ModelParams& other) const;
};

// Uniform(±sqrt(6 / (fan_in + fan_out))) weights, zero biases.
LayerParams InitLayerParams(const LayerSpec& layer, Rng& rng);
ModelParams InitParams(const NetworkSpec& spec, std::uint64_t seed);

// Throws ShapeError if `params` does not fit `spec`.
void CheckParamsMatch(const NetworkSpec& spec, const ModelParams& params);

}  // namespace hasr::nn

#endif  // HASR_NN_MODEL_PARAMS_H_
