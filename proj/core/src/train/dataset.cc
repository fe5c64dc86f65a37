// core/src/train/dataset.cc

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

#include "hasr/train/dataset.h"

#include "hasr/common/errors.h"

namespace hasr::train {

nn::Minibatch FrameDataset::MakeBatch(std::span<const std::size_t> indices) const {
  nn::Minibatch b;
  b.inputs.resize(static_cast<Eigen::Index>(indices.size()), inputs.cols());
  b.targets.resize(indices.size());
  if (speaker_embedding.size()) {
    b.speaker_embedding.resize(static_cast<Eigen::Index>(indices.size()), speaker_embedding.cols());
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(indices[i]);
    b.inputs.row(i) = inputs.row(r);
    b.targets[i] = targets[indices[i]];
    if (speaker_embedding.size()) b.speaker_embedding.row(i) = speaker_embedding.row(r);
  }
  return b;
}

nn::Minibatch FrameDataset::All() const {
  nn::Minibatch b;
  b.inputs = inputs;
  b.targets = targets;
  b.speaker_embedding = speaker_embedding;
  return b;
}

void FrameDataset::Validate() const {
  if (static_cast<std::size_t>(inputs.rows()) != targets.size()) {
    throw ShapeError("dataset has " + std::to_string(inputs.rows()) + " frames but " +
                     std::to_string(targets.size()) + " targets");
  }
  if (speaker_embedding.size() && speaker_embedding.rows() != inputs.rows()) {
    throw ShapeError("speaker embedding rows do not match dataset frames");
  }
}

FrameDataset FrameDataset::Concat(const std::vector<FrameDataset>& parts) {
  FrameDataset out;
  Eigen::Index rows = 0, cols = -1, emb = -1;
  for (const auto& p : parts) {
    p.Validate();
    if (p.NumExamples() == 0) continue;
    if (cols >= 0 && (p.inputs.cols() != cols || p.speaker_embedding.cols() != emb)) {
      throw ShapeError("cannot concatenate datasets of different widths");
    }
    cols = p.inputs.cols();
    emb = p.speaker_embedding.cols();
    rows += p.inputs.rows();
  }
  if (cols < 0) return out;
  out.inputs.resize(rows, cols);
  if (emb > 0) out.speaker_embedding.resize(rows, emb);
  Eigen::Index r = 0;
  for (const auto& p : parts) {
    if (p.NumExamples() == 0) continue;
    out.inputs.middleRows(r, p.inputs.rows()) = p.inputs;
    if (emb > 0) out.speaker_embedding.middleRows(r, p.inputs.rows()) = p.speaker_embedding;
    out.targets.insert(out.targets.end(), p.targets.begin(), p.targets.end());
    r += p.inputs.rows();
  }
  return out;
}

FrameDataset FrameDataset::FromUtterances(const std::vector<Matrix>& inputs,
                                          const std::vector<std::vector<StateId>>& targets) {
  if (inputs.size() != targets.size()) throw ShapeError("need one target sequence per utterance");
  std::vector<FrameDataset> parts(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    parts[i].inputs = inputs[i];
    parts[i].targets = targets[i];
  }
  return Concat(parts);
}

}  // namespace hasr::train
