// core/include/hasr/nn/network.h

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

#ifndef HASR_NN_NETWORK_H_
#define HASR_NN_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/nn/layer_spec.h"
#include "hasr/nn/layers.h"
#include "hasr/nn/model_params.h"

namespace hasr::nn {

// Frames with their target state ids. `speaker_embedding`, when non-empty,
// holds one row per frame and is appended to `inputs` before the first
// layer.
struct Minibatch {
  Matrix inputs;
  std::vector<StateId> targets;
  Matrix speaker_embedding;

  std::size_t size() const { return static_cast<std::size_t>(inputs.rows()); }
  Matrix NetworkInput() const;
};

inline constexpr std::size_t kDefaultMinibatchFrames = 250;

// Dropout applied to the outputs of hidden maxout layers in train mode.
struct DropoutState {
  double rate = 0.0;
  Rng* rng = nullptr;
};

// Per-layer bookkeeping needed by the backward pass.
struct LayerTrace {
  std::vector<int> winners;        // maxout / maxpool, N × output_dim row-major
  Matrix dropout_mask;             // only for maxout layers under dropout
  std::vector<Matrix> rnn_states;  // recurrent: N × hidden after each step
};

// activations[0] is the stack input, activations[i + 1] the output of
// layer i (after dropout, when applied).
struct StackTrace {
  std::vector<Matrix> activations;
  std::vector<LayerTrace> layers;

  const Matrix& output() const { return activations.back(); }
};

// Forward pass through layers [begin, end) of `spec` (softmax layers are
// evaluated as log-softmax). Throws NumericError naming the layer if an
// activation becomes non-finite.
StackTrace StackForward(const NetworkSpec& spec, const ModelParams& params, const Matrix& input,
                        Mode mode, DropoutState dropout, std::size_t begin, std::size_t end);

// Backward pass matching StackForward over [begin, end). Accumulates
// parameter gradients into `grads` (which must be shaped like params) and
// returns the gradient with respect to the stack input when
// `want_input_grad` is set (otherwise an empty matrix).
Matrix StackBackward(const NetworkSpec& spec, const ModelParams& params, const StackTrace& trace,
                     const Matrix& grad_output, std::size_t begin, std::size_t end,
                     ModelParams* grads, bool want_input_grad);

struct ForwardResult {
  StackTrace trace;
  Matrix logits;
  Matrix log_posteriors;
};

ForwardResult NetworkForward(const NetworkSpec& spec, const ModelParams& params,
                             const Matrix& inputs, Mode mode, DropoutState dropout = {});

struct BackpropResult {
  ModelParams gradients;
  double loss = 0.0;  // mean cross-entropy (nats per frame)
  std::size_t correct = 0;
};

// Gradient of the mean frame cross-entropy.
BackpropResult Backprop(const NetworkSpec& spec, const ModelParams& params,
                        const Minibatch& batch, DropoutState dropout = {});

// Cross-entropy bookkeeping returned by training and evaluation steps.
struct StepStats {
  double loss_sum = 0.0;
  std::size_t correct = 0;
  std::size_t frames = 0;

  StepStats& operator+=(const StepStats& o) {
    loss_sum += o.loss_sum;
    correct += o.correct;
    frames += o.frames;
    return *this;
  }
  double MeanLoss() const { return frames ? loss_sum / static_cast<double>(frames) : 0.0; }
  double Accuracy() const {
    return frames ? static_cast<double>(correct) / static_cast<double>(frames) : 0.0;
  }
};

// Cross-entropy sum and argmax hits of log-posteriors against targets.
StepStats ScoreLogPosteriors(const Matrix& log_posteriors, const std::vector<StateId>& targets);

// A network bundled with its parameters; satisfies the trainer's model
// requirements.
class Network {
 public:
  using Batch = Minibatch;

  Network() = default;
  Network(NetworkSpec spec, ModelParams params);
  static Network Random(NetworkSpec spec, std::uint64_t seed);

  const NetworkSpec& spec() const { return spec_; }
  const ModelParams& params() const { return params_; }
  ModelParams& mutable_params() { return params_; }

  int input_dim() const { return spec_.input_dim(); }
  int num_outputs() const { return spec_.output_dim(); }

  // Pre-softmax outputs and log-posteriors in eval mode.
  Matrix Logits(const Matrix& inputs) const;
  Matrix LogPosteriors(const Matrix& inputs) const;
  // Output of the layer feeding the final affine (the bottleneck).
  Matrix Bottleneck(const Matrix& inputs) const;

  // One SGD step on `batch`; the returned stats are measured before the update.
  StepStats TrainStep(const Minibatch& batch, double learning_rate, DropoutState dropout);
  StepStats Evaluate(const Minibatch& batch) const;

  bool operator==(const Network&) const = default;

 private:
  NetworkSpec spec_;
  ModelParams params_;
};

}  // namespace hasr::nn

#endif  // HASR_NN_NETWORK_H_
