// core/include/hasr/fusion/joint_model.h

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

#ifndef HASR_FUSION_JOINT_MODEL_H_
#define HASR_FUSION_JOINT_MODEL_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hasr/nn/network.h"
#include "hasr/train/dataset.h"
#include "hasr/train/trainer.h"

namespace hasr::fusion {

// One member's layers up to and including its bottleneck. The branch reads
// columns [input_offset, input_offset + stack input_dim) of the joint input
// row. `input_transform` is an opaque tag naming how that slice is built
// from feature frames (see features::InputTransform).
struct JointBranch {
  nn::NetworkSpec stack;
  nn::ModelParams params;
  int input_offset = 0;
  std::string input_transform;

  int input_dim() const { return stack.input_dim(); }
  int bottleneck_dim() const { return stack.output_dim(); }
  bool operator==(const JointBranch&) const = default;
};

// Branch stacks whose bottlenecks are concatenated into a single shared
// affine output layer followed by a softmax.
class JointModel {
 public:
  JointModel() = default;
  JointModel(std::vector<JointBranch> branches, Matrix output_weights, Vector output_bias);

  int input_dim() const;
  int num_outputs() const { return static_cast<int>(output_weights_.rows()); }
  const std::vector<JointBranch>& branches() const { return branches_; }
  const Matrix& output_weights() const { return output_weights_; }  // outputs × Σ bottleneck
  const Vector& output_bias() const { return output_bias_; }

  // Concatenated bottleneck activations, eval mode.
  Matrix Bottlenecks(const Matrix& inputs) const;
  Matrix Logits(const Matrix& inputs) const;
  Matrix LogPosteriors(const Matrix& inputs) const;

  nn::StepStats TrainStep(const nn::Minibatch& batch, double learning_rate, nn::DropoutState dropout);
  nn::StepStats Evaluate(const nn::Minibatch& batch) const;

  void Write(std::ostream& os) const;
  static JointModel Read(std::istream& is);
  void Save(const std::string& path) const;
  static JointModel Load(const std::string& path);

  bool operator==(const JointModel&) const = default;

 private:
  void Validate() const;

  std::vector<JointBranch> branches_;
  Matrix output_weights_;
  Vector output_bias_;
};

static_assert(train::TrainableOn<JointModel, train::FrameDataset>);

// Output weights [w_1 W_1 | ... | w_M W_M], bias Σ w_m b_m, so that at
// construction the joint logits equal ScoreFuse of the member logits.
// Branch m takes the m-th slice of the joint input in member order.
// Throws ConfigError when a member has no bottleneck or the output counts
// differ.
JointModel BuildJoint(const std::vector<const nn::Network*>& members, const std::vector<double>& weights,
                      const std::vector<std::string>& input_transforms = {});

// Horizontal concatenation of the per-member input matrices in branch order.
Matrix JointInput(const std::vector<Matrix>& member_inputs);

struct JointTrainResult {
  JointModel model;
  std::vector<train::EpochRecord> history;
  double initial_loss = 0.0;
};

// Cross-entropy SGD on the whole joint model (branches and output layer).
JointTrainResult RetrainJoint(JointModel joint, const train::FrameDataset& data, const train::TrainConfig& config,
                              const train::FrameDataset* heldout = nullptr);

}  // namespace hasr::fusion

#endif  // HASR_FUSION_JOINT_MODEL_H_
