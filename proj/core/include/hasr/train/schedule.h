// core/include/hasr/train/schedule.h

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

#ifndef HASR_TRAIN_SCHEDULE_H_
#define HASR_TRAIN_SCHEDULE_H_

#include <cstddef>
#include <cstdint>

namespace hasr::train {

// Linearly annealed dropout: p0 at epoch 0, reaching 0 at end_epoch.
struct DropoutSchedule {
  double p0 = 0.0;
  int end_epoch = 1;

  void Validate() const;
};

// max(0, p0 * (1 - epoch / end_epoch)).
double AnnealRate(const DropoutSchedule& schedule, int epoch);

// ceil(0.75 * epochs), at least 1.
int DefaultDropoutEndEpoch(int epochs);

struct TrainConfig {
  int epochs = 12;
  std::size_t minibatch_frames = 250;
  double lr0 = 0.1;
  double lr_decay = 0.8;
  std::uint64_t seed = 1;
  DropoutSchedule dropout;  // p0 = 0 disables dropout

  void Validate() const;
  // Constant within an epoch: lr0 * lr_decay^epoch.
  double LearningRate(int epoch) const;
};

}  // namespace hasr::train

#endif  // HASR_TRAIN_SCHEDULE_H_
