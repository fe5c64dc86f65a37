// core/include/hasr/nn/layers.h

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

#ifndef HASR_NN_LAYERS_H_
#define HASR_NN_LAYERS_H_

#include <vector>

#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/nn/layer_spec.h"

namespace hasr::nn {

enum class Mode { kTrain, kEval };

// --- maxout -----------------------------------------------------------------

struct MaxoutResult {
  Vector outputs;
  // Absolute index (into the pre-activation vector) of each group maximum.
  std::vector<int> winners;
};

// outputs[j] = max over the j-th disjoint group of `group_size`
// pre-activations; ties go to the lowest index.
MaxoutResult MaxoutForward(const Vector& pre_activations, int group_size);

// Routes grad_out[j] to winners[j]; everything else receives zero.
Vector MaxoutBackward(const Vector& grad_out, const std::vector<int>& winners, int group_size);

// --- convolution / pooling --------------------------------------------------

struct ConvShape {
  Geometry input;
  int num_filters = 0;
  int window_h = 0;
  int window_w = 0;
  int stride = 1;

  static ConvShape FromLayer(const LayerSpec& layer);
  Geometry Output() const;
  // Taps per filter, ordered (dh, dw, c) with c fastest.
  int Taps() const { return window_h * window_w * input.channels; }
};

// Valid-mode cross-correlation of one flattened H×W×C block. `filters` is
// num_filters × Taps(). The result is flattened in the same HWC layout
// with one channel per filter.
Vector Conv2dForward(const Vector& input, const ConvShape& shape, const Matrix& filters,
                     const Vector& bias);

struct PoolResult {
  Vector outputs;
  std::vector<int> winners;  // absolute input index of each window maximum
};

// Non-overlapping max pooling; trailing rows/columns that do not fill a
// whole window are dropped. Ties go to the first element in scan order.
PoolResult MaxPoolForward(const Vector& input, const Geometry& geometry, int pool_h, int pool_w);

// --- partially unfolded recurrence ------------------------------------------

struct RecurrentShape {
  int steps = 0;
  int frame_dim = 0;
  int aux_dim = 0;
  int hidden_dim = 0;

  static RecurrentShape FromLayer(const LayerSpec& layer);
};

// Runs h_k = sigmoid(W [x_k; aux] + U h_prev + b) over the window frames in
// reverse order (last frame first, ending at the first frame of the
// window), starting from h = 0, and returns every intermediate state.
// states[0] is the zero initial state; states.back() is the layer output.
std::vector<Vector> UnfoldedRnnStates(const Vector& window, const RecurrentShape& shape,
                                      const Matrix& weights, const Matrix& recurrent,
                                      const Vector& bias);

Vector UnfoldedRnnForward(const Vector& window, const RecurrentShape& shape,
                          const Matrix& weights, const Matrix& recurrent, const Vector& bias);

// --- misc -------------------------------------------------------------------

double Sigmoid(double x);

// Row-wise log-softmax, numerically stabilized.
Matrix LogSoftmaxRows(const Matrix& logits);

// Inverted dropout. In train mode every unit is zeroed with probability
// `rate` and survivors are scaled by 1/(1-rate); eval mode is the identity.
// When `mask` is non-null it receives the multiplicative mask that was
// applied. Throws ConfigError unless 0 <= rate < 1.
Matrix ApplyDropout(const Matrix& activations, double rate, Rng& rng, Mode mode,
                    Matrix* mask = nullptr);

}  // namespace hasr::nn

#endif  // HASR_NN_LAYERS_H_
