// core/src/fusion/joint_model.cc

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

#include "hasr/fusion/joint_model.h"

#include <fstream>
#include <string>

#include "hasr/common/binary_io.h"
#include "hasr/common/errors.h"
#include "hasr/fusion/score_fusion.h"
#include "hasr/nn/serialization.h"

namespace hasr::fusion {
namespace {

constexpr std::uint32_t kJnetVersion = 1;

struct JointTrace {
  std::vector<nn::StackTrace> branches;
  Matrix bottlenecks;
  Matrix log_posteriors;
};

}  // namespace

JointModel::JointModel(std::vector<JointBranch> branches, Matrix output_weights, Vector output_bias)
    : branches_(std::move(branches)),
      output_weights_(std::move(output_weights)),
      output_bias_(std::move(output_bias)) {
  Validate();
}

void JointModel::Validate() const {
  if (branches_.empty()) throw ConfigError("joint model has no branches");
  int width = 0;
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const JointBranch& br = branches_[b];
    br.stack.ValidateStack();
    nn::CheckParamsMatch(br.stack, br.params);
    if (br.input_offset < 0) throw ShapeError("branch " + std::to_string(b) + " has a negative input offset");
    width += br.bottleneck_dim();
  }
  if (output_weights_.cols() != width) {
    throw ShapeError("joint output layer expects " + std::to_string(output_weights_.cols()) +
                     " bottleneck values, branches provide " + std::to_string(width));
  }
  if (output_bias_.size() != output_weights_.rows() || output_weights_.rows() == 0) {
    throw ShapeError("joint output bias does not match the output count");
  }
}

int JointModel::input_dim() const {
  int dim = 0;
  for (const auto& b : branches_) dim = std::max(dim, b.input_offset + b.input_dim());
  return dim;
}

namespace {

JointTrace JointForward(const std::vector<JointBranch>& branches, const Matrix& w_out, const Vector& b_out,
                        const Matrix& inputs, nn::Mode mode, nn::DropoutState dropout, int input_dim) {
  if (inputs.cols() != input_dim) {
    throw ShapeError("joint model expects " + std::to_string(input_dim) + " input columns, got " +
                     std::to_string(inputs.cols()));
  }
  JointTrace t;
  t.bottlenecks.resize(inputs.rows(), w_out.cols());
  Eigen::Index col = 0;
  for (const auto& br : branches) {
    t.branches.push_back(nn::StackForward(br.stack, br.params, inputs.middleCols(br.input_offset, br.input_dim()),
                                          mode, dropout, 0, br.stack.layers.size()));
    const Matrix& out = t.branches.back().output();
    t.bottlenecks.middleCols(col, out.cols()) = out;
    col += out.cols();
  }
  t.log_posteriors = nn::LogSoftmaxRows((t.bottlenecks * w_out.transpose()).rowwise() + b_out.transpose());
  return t;
}

}  // namespace

Matrix JointModel::Bottlenecks(const Matrix& inputs) const {
  return JointForward(branches_, output_weights_, output_bias_, inputs, nn::Mode::kEval, {}, input_dim())
      .bottlenecks;
}

Matrix JointModel::Logits(const Matrix& inputs) const {
  return (Bottlenecks(inputs) * output_weights_.transpose()).rowwise() + output_bias_.transpose();
}

Matrix JointModel::LogPosteriors(const Matrix& inputs) const {
  return JointForward(branches_, output_weights_, output_bias_, inputs, nn::Mode::kEval, {}, input_dim())
      .log_posteriors;
}

nn::StepStats JointModel::Evaluate(const nn::Minibatch& batch) const {
  return nn::ScoreLogPosteriors(LogPosteriors(batch.NetworkInput()), batch.targets);
}

nn::StepStats JointModel::TrainStep(const nn::Minibatch& batch, double learning_rate, nn::DropoutState dropout) {
  if (batch.size() == 0) throw DataError("empty minibatch");
  const JointTrace t = JointForward(branches_, output_weights_, output_bias_, batch.NetworkInput(),
                                    nn::Mode::kTrain, dropout, input_dim());
  const nn::StepStats stats = nn::ScoreLogPosteriors(t.log_posteriors, batch.targets);

  Matrix dlogits = t.log_posteriors.array().exp();
  for (Eigen::Index r = 0; r < dlogits.rows(); ++r) dlogits(r, batch.targets[r]) -= 1.0;
  dlogits /= static_cast<double>(batch.size());
  const Matrix dbottleneck = dlogits * output_weights_;

  std::vector<nn::ModelParams> grads;
  Eigen::Index col = 0;
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const JointBranch& br = branches_[b];
    grads.push_back(br.params.ZerosLike());
    nn::StackBackward(br.stack, br.params, t.branches[b], dbottleneck.middleCols(col, br.bottleneck_dim()), 0,
                      br.stack.layers.size(), &grads.back(), false);
    col += br.bottleneck_dim();
  }
  if (learning_rate != 0.0) {
    output_weights_.noalias() -= learning_rate * dlogits.transpose() * t.bottlenecks;
    output_bias_ -= learning_rate * dlogits.colwise().sum().transpose();
    for (std::size_t b = 0; b < branches_.size(); ++b) branches_[b].params.Axpy(-learning_rate, grads[b]);
  }
  return stats;
}

void JointModel::Write(std::ostream& os) const {
  io::WriteMagic(os, "JNET");
  io::WriteU32(os, kJnetVersion);
  io::WriteU32(os, static_cast<std::uint32_t>(branches_.size()));
  for (const auto& br : branches_) {
    io::WriteU32(os, static_cast<std::uint32_t>(br.input_offset));
    io::WriteU32(os, static_cast<std::uint32_t>(br.input_transform.size()));
    os.write(br.input_transform.data(), static_cast<std::streamsize>(br.input_transform.size()));
    nn::WriteNnet(os, br.stack, br.params);
  }
  io::WriteMatrix(os, output_weights_);
  io::WriteVector(os, output_bias_);
}

JointModel JointModel::Read(std::istream& is) {
  io::ExpectMagic(is, "JNET", "joint model");
  if (const std::uint32_t v = io::ReadU32(is); v != kJnetVersion) {
    throw ParseError("unsupported joint model version " + std::to_string(v));
  }
  const std::uint32_t n = io::ReadU32(is);
  if (n == 0 || n > 1024) throw ParseError("implausible joint branch count " + std::to_string(n));
  std::vector<JointBranch> branches(n);
  for (auto& br : branches) {
    br.input_offset = static_cast<int>(io::ReadU32(is));
    const std::uint32_t len = io::ReadU32(is);
    if (len > 4096) throw ParseError("joint branch transform tag is too long");
    br.input_transform.resize(len);
    is.read(br.input_transform.data(), len);
    if (!is) throw ParseError("joint model is truncated");
    nn::ReadNnet(is, &br.stack, &br.params, /*require_output=*/false);
  }
  Matrix w = io::ReadMatrix(is);
  Vector b = io::ReadVector(is);
  try {
    return JointModel(std::move(branches), std::move(w), std::move(b));
  } catch (const ShapeError& e) {
    throw ParseError(std::string("inconsistent joint model: ") + e.what());
  }
}

void JointModel::Save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  Write(os);
  if (!os) throw IoError("failed writing '" + path + "'");
}

JointModel JointModel::Load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open joint model '" + path + "'");
  return Read(is);
}

JointModel BuildJoint(const std::vector<const nn::Network*>& members, const std::vector<double>& weights,
                      const std::vector<std::string>& input_transforms) {
  ValidateFusionWeights(weights, members.size());
  if (!input_transforms.empty() && input_transforms.size() != members.size()) {
    throw ConfigError("need one input transform tag per joint member");
  }
  const int outputs = members[0]->num_outputs();
  int width = 0;
  for (std::size_t m = 0; m < members.size(); ++m) {
    if (members[m]->num_outputs() != outputs) {
      throw ConfigError("joint member " + std::to_string(m) + " has " +
                        std::to_string(members[m]->num_outputs()) + " outputs, expected " +
                        std::to_string(outputs));
    }
    width += members[m]->spec().BottleneckDim();
  }

  std::vector<JointBranch> branches;
  Matrix w_out(outputs, width);
  Vector b_out = Vector::Zero(outputs);
  int offset = 0;
  Eigen::Index col = 0;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const nn::Network& net = *members[m];
    const std::size_t out_idx = net.spec().OutputAffineIndex();
    JointBranch br;
    br.stack.layers.assign(net.spec().layers.begin(), net.spec().layers.begin() + out_idx);
    br.params.layers.assign(net.params().layers.begin(), net.params().layers.begin() + out_idx);
    br.input_offset = offset;
    if (!input_transforms.empty()) br.input_transform = input_transforms[m];
    offset += br.input_dim();

    const nn::LayerParams& out = net.params().layers[out_idx];
    w_out.middleCols(col, out.weights.cols()) = weights[m] * out.weights;
    b_out += weights[m] * out.bias;
    col += out.weights.cols();
    branches.push_back(std::move(br));
  }
  return JointModel(std::move(branches), std::move(w_out), std::move(b_out));
}

Matrix JointInput(const std::vector<Matrix>& member_inputs) {
  if (member_inputs.empty()) throw ShapeError("no member inputs");
  Eigen::Index cols = 0;
  for (const Matrix& m : member_inputs) {
    if (m.rows() != member_inputs[0].rows()) throw ShapeError("member inputs differ in frame count");
    cols += m.cols();
  }
  Matrix out(member_inputs[0].rows(), cols);
  Eigen::Index c = 0;
  for (const Matrix& m : member_inputs) {
    out.middleCols(c, m.cols()) = m;
    c += m.cols();
  }
  return out;
}

JointTrainResult RetrainJoint(JointModel joint, const train::FrameDataset& data, const train::TrainConfig& config,
                              const train::FrameDataset* heldout) {
  data.Validate();
  JointTrainResult r;
  r.initial_loss = train::EvaluateDataset(joint, data).MeanLoss();
  r.history = train::RunEpochs(joint, data, config, heldout);
  r.model = std::move(joint);
  return r;
}

}  // namespace hasr::fusion
