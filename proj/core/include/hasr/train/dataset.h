// core/include/hasr/train/dataset.h

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

#ifndef HASR_TRAIN_DATASET_H_
#define HASR_TRAIN_DATASET_H_

#include <concepts>
#include <span>
#include <vector>

#include "hasr/common/types.h"
#include "hasr/nn/network.h"

namespace hasr::train {

// In-memory frame set: one input row and one target per frame.
struct FrameDataset {
  Matrix inputs;
  std::vector<StateId> targets;
  Matrix speaker_embedding;  // optional, one row per frame

  std::size_t NumExamples() const { return targets.size(); }
  nn::Minibatch MakeBatch(std::span<const std::size_t> indices) const;
  nn::Minibatch All() const;
  void Validate() const;

  // Row-wise concatenation of datasets with equal widths.
  static FrameDataset Concat(const std::vector<FrameDataset>& parts);
  // Stacks per-utterance network inputs with their frame targets.
  static FrameDataset FromUtterances(const std::vector<Matrix>& inputs,
                                     const std::vector<std::vector<StateId>>& targets);
};

template <typename D>
concept BatchSource = requires(const D& d, std::span<const std::size_t> idx) {
  { d.NumExamples() } -> std::convertible_to<std::size_t>;
  d.MakeBatch(idx);
};

template <typename D>
using BatchOf = decltype(std::declval<const D&>().MakeBatch(std::span<const std::size_t>{}));

// A model the SGD loop can drive: TrainStep applies one update and reports
// pre-update statistics, Evaluate is side-effect free.
template <typename M, typename D>
concept TrainableOn = BatchSource<D> &&
    requires(M& m, const M& cm, const BatchOf<D>& batch, double lr, nn::DropoutState d) {
  { m.TrainStep(batch, lr, d) } -> std::same_as<nn::StepStats>;
  { cm.Evaluate(batch) } -> std::same_as<nn::StepStats>;
};

}  // namespace hasr::train

#endif  // HASR_TRAIN_DATASET_H_
