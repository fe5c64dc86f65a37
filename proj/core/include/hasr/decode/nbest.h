// core/include/hasr/decode/nbest.h

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

#ifndef HASR_DECODE_NBEST_H_
#define HASR_DECODE_NBEST_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hasr/common/types.h"
#include "hasr/decode/topology.h"

namespace hasr::decode {

struct NBestEntry {
  std::vector<std::string> words;
  double am_score = 0.0;
  double lm_score = 0.0;

  bool operator==(const NBestEntry&) const = default;
};

struct NBestList {
  std::string utt_id;
  std::vector<NBestEntry> entries;  // rank order

  bool operator==(const NBestList&) const = default;
};

// Lines `utt_id rank am_score lm_score num_words w1 ... wn`; entries of one
// utterance are contiguous with ranks 1..N. Scores are written with
// round-trip precision.
void WriteNBest(std::ostream& os, const std::vector<NBestList>& lists);
std::vector<NBestList> ReadNBest(std::istream& is, const std::string& origin = "<stream>");
void WriteNBestFile(const std::string& path, const std::vector<NBestList>& lists);
std::vector<NBestList> ReadNBestFile(const std::string& path);

// Approximate N-best: the Viterbi 1-best plus every hypothesis within
// `max_edits` word substitutions, insertions or deletions of it, each
// scored by forced alignment; the `n` best by acoustic score are kept
// (stable on ties, 1-best first). lm_score is left at zero.
NBestList GenerateNBest(const std::string& utt_id, const Matrix& scores, const HmmTopology& topology, int n,
                        int max_edits = 1);

}  // namespace hasr::decode

#endif  // HASR_DECODE_NBEST_H_
