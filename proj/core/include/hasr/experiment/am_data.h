// core/include/hasr/experiment/am_data.h

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

#ifndef HASR_EXPERIMENT_AM_DATA_H_
#define HASR_EXPERIMENT_AM_DATA_H_

#include <string>
#include <vector>

#include "hasr/common/types.h"
#include "hasr/decode/synth.h"
#include "hasr/decode/topology.h"

namespace hasr::experiment {

struct AmUtterance {
  std::string utt_id;
  std::string side_id;
  Matrix frames;
  std::vector<StateId> states;     // empty when no alignment is available
  std::vector<std::string> words;  // empty when no transcript is available
};

// A split of acoustic data together with its decoding topology.
struct AmData {
  decode::HmmTopology topology;
  std::vector<AmUtterance> utterances;

  bool HasAlignments() const;
  int FeatureDim() const;
  std::vector<Matrix> Frames() const;
  std::vector<std::string> Sides() const;
  std::vector<std::vector<StateId>> States() const;
  std::size_t NumFrames() const;
};

AmData FromSynth(const decode::SynthCorpus& corpus);

// Reads a directory in the layout written by decode::WriteCorpus:
// feats.scp, utt2side, topology.txt, and optionally ali.txt and text.
// Utterances without a side entry use their own id as the side.
AmData LoadAmData(const std::string& dir);

}  // namespace hasr::experiment

#endif  // HASR_EXPERIMENT_AM_DATA_H_
