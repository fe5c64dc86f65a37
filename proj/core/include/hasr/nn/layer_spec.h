// core/include/hasr/nn/layer_spec.h

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

#ifndef HASR_NN_LAYER_SPEC_H_
#define HASR_NN_LAYER_SPEC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hasr::nn {

enum class LayerKind : std::uint32_t {
  kAffine = 0,
  kSigmoid = 1,
  kRelu = 2,
  kMaxout = 3,
  kConv2d = 4,
  kMaxPool = 5,
  kRecurrentUnfolded = 6,
  kSoftmaxOutput = 7,
};

const char* LayerKindName(LayerKind kind);

// Spatial block layout used by conv2d and maxpool: height (frequency) ×
// width (time) × channels, flattened with channels fastest:
// index = (h * width + w) * channels + c.
struct Geometry {
  int height = 0;
  int width = 0;
  int channels = 0;

  int Size() const { return height * width * channels; }
  bool operator==(const Geometry&) const = default;
};

// One layer of a feed-forward stack. Only the fields relevant to `kind`
// are meaningful; the factory functions below fill them consistently.
struct LayerSpec {
  LayerKind kind = LayerKind::kAffine;
  int input_dim = 0;
  int output_dim = 0;

  // maxout: size of each disjoint group of pre-activations.
  int group_size = 1;

  // conv2d / maxpool: geometry of the input block.
  Geometry input_geometry;
  int num_filters = 0;
  int window_h = 0;
  int window_w = 0;
  int stride = 1;
  int pool_h = 0;
  int pool_w = 0;

  // recurrent_unfolded: the input row holds `steps` frames of `frame_dim`
  // values (frames t..t+steps-1) followed by an optional auxiliary vector
  // that is fed at every step.
  int steps = 0;
  int frame_dim = 0;

  int AuxDim() const { return input_dim - steps * frame_dim; }
  Geometry OutputGeometry() const;
  bool HasParams() const;
  bool operator==(const LayerSpec&) const = default;

  static LayerSpec Affine(int input_dim, int output_dim);
  static LayerSpec Sigmoid(int dim);
  static LayerSpec Relu(int dim);
  static LayerSpec Maxout(int input_dim, int group_size);
  static LayerSpec Conv2d(Geometry input, int num_filters, int window_h, int window_w,
                          int stride = 1);
  static LayerSpec MaxPool(Geometry input, int pool_h, int pool_w);
  static LayerSpec RecurrentUnfolded(int frame_dim, int steps, int hidden_dim, int aux_dim = 0);
  static LayerSpec SoftmaxOutput(int dim);
};

// Ordered layer list. A complete network ends in exactly one
// softmax_output; a "stack" (branch of a joint model) has none.
struct NetworkSpec {
  std::vector<LayerSpec> layers;

  int input_dim() const;
  int output_dim() const;

  // Throws ShapeError/ConfigError describing the first violated invariant.
  void Validate() const;
  void ValidateStack() const;

  // Index of the affine output layer feeding the softmax, i.e. the layer
  // whose input is the bottleneck. Throws ConfigError when the network has
  // no layer in front of its output affine.
  std::size_t OutputAffineIndex() const;
  int BottleneckDim() const;

  bool operator==(const NetworkSpec&) const = default;
};

// Number of trainable scalars (weights, biases, recurrence matrices).
std::size_t CountParams(const LayerSpec& layer);
std::size_t CountParams(const NetworkSpec& spec);

enum class Nonlinearity { kSigmoid, kRelu, kMaxout };

// Affine width for a maxout layer that matches the per-layer parameter
// budget of a sigmoid layer of `sigmoid_width` units: ceil(sqrt(2) * n),
// rounded up to a multiple of the group size.
int EqualizedMaxoutWidth(int sigmoid_width, int group_size = 2);

// DNN: for every entry of `hidden`, an affine layer of that width followed
// by the nonlinearity (maxout halves the width for group_size 2). A
// positive `bottleneck` inserts a linear affine layer of that width before
// the output affine.
NetworkSpec BuildFeedForward(int input_dim, const std::vector<int>& hidden, Nonlinearity nl,
                             int bottleneck, int num_outputs, int group_size = 2);

struct CnnConfig {
  Geometry input{40, 11, 3};
  int conv1_filters = 128;
  int conv1_window_h = 9;
  int conv1_window_w = 9;
  int pool_h = 2;
  int pool_w = 2;
  int conv2_filters = 256;
  int conv2_window_h = 4;
  int conv2_window_w = 1;
  std::vector<int> hidden;
  Nonlinearity nl = Nonlinearity::kSigmoid;
  int group_size = 2;
  int bottleneck = 512;
  int num_outputs = 0;
};

// conv -> nonlinearity -> maxpool -> conv -> nonlinearity -> hidden
// affine layers -> bottleneck -> output.
NetworkSpec BuildCnn(const CnnConfig& config);

struct RnnConfig {
  int frame_dim = 40;
  int steps = 6;
  int aux_dim = 0;
  int recurrent_dim = 0;
  std::vector<int> hidden;
  int bottleneck = 512;
  int num_outputs = 0;
};

// Partially unfolded recurrent first layer, then sigmoid hidden layers,
// bottleneck and output.
NetworkSpec BuildUnfoldedRnn(const RnnConfig& config);

// Parses a whitespace-separated layer description such as
//   "affine:256 sigmoid affine:64 affine:30 softmax"
//   "conv:16:9:9 sigmoid maxpool:2:2 conv:32:4:1 sigmoid affine:128 ..."
//   "rnn:128:6 affine:256 sigmoid ..."
// Element-wise layers take the current width. `input_geometry` is required
// when the first spatial layer is a conv; `frame_dim` when an rnn layer is
// present.
NetworkSpec ParseLayerString(const std::string& description, int input_dim,
                             std::optional<Geometry> input_geometry = std::nullopt,
                             int frame_dim = 0);

std::string DescribeNetwork(const NetworkSpec& spec);

}  // namespace hasr::nn

#endif  // HASR_NN_LAYER_SPEC_H_
