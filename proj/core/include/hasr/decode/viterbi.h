// core/include/hasr/decode/viterbi.h

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

#ifndef HASR_DECODE_VITERBI_H_
#define HASR_DECODE_VITERBI_H_

#include <string>
#include <vector>

#include "hasr/common/types.h"
#include "hasr/decode/topology.h"

namespace hasr::decode {

struct DecodeResult {
  std::vector<int> words;  // word indices into the topology
  std::vector<StateId> states;
  double score = 0.0;
};

// Exact max-sum search over the word-loop graph. `scores` is T × num_states.
// Among equal-scoring predecessors the lower state index wins, and a
// self-loop wins over a word-boundary transition from the same state.
// Throws DecodeError when no path ends in a word-final state.
DecodeResult ViterbiDecode(const Matrix& scores, const HmmTopology& topology);

// Best state path for a fixed word sequence (emission and transition
// scores only; no word-entry terms). Throws DecodeError when the sequence
// needs more frames than T.
DecodeResult ForcedAlign(const Matrix& scores, const HmmTopology& topology, const std::vector<int>& words);

std::vector<std::string> WordNames(const HmmTopology& topology, const std::vector<int>& words);

}  // namespace hasr::decode

#endif  // HASR_DECODE_VITERBI_H_
