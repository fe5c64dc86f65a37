// core/src/train/schedule.cc

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

#include "hasr/train/schedule.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hasr/common/errors.h"

namespace hasr::train {

void DropoutSchedule::Validate() const {
  if (!(p0 >= 0.0 && p0 < 1.0)) {
    throw ConfigError("dropout p0 must lie in [0, 1), got " + std::to_string(p0));
  }
  if (end_epoch < 1) throw ConfigError("dropout end_epoch must be at least 1");
}

double AnnealRate(const DropoutSchedule& s, int epoch) {
  if (epoch < 0) throw ConfigError("epoch must be non-negative");
  if (s.p0 == 0.0 || epoch >= s.end_epoch) return 0.0;
  return std::max(0.0, s.p0 * (1.0 - static_cast<double>(epoch) / s.end_epoch));
}

int DefaultDropoutEndEpoch(int epochs) {
  return std::max(1, static_cast<int>(std::ceil(0.75 * epochs)));
}

void TrainConfig::Validate() const {
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (minibatch_frames < 1) throw ConfigError("minibatch_frames must be at least 1");
  if (!(lr0 >= 0.0)) throw ConfigError("lr0 must be non-negative");
  if (!(lr_decay > 0.0)) throw ConfigError("lr_decay must be positive");
  dropout.Validate();
}

double TrainConfig::LearningRate(int epoch) const { return lr0 * std::pow(lr_decay, epoch); }

}  // namespace hasr::train
