// core/include/hasr/decode/wer.h

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

#ifndef HASR_DECODE_WER_H_
#define HASR_DECODE_WER_H_

#include <string>
#include <vector>

namespace hasr::decode {

struct WerReport {
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;
  long reference_words = 0;

  long Errors() const { return substitutions + deletions + insertions; }
  // Errors / reference words. With an empty reference the rate is the
  // raw error count.
  double Rate() const;
  WerReport& operator+=(const WerReport& other);
};

enum class EditOp { kMatch, kSubstitution, kInsertion, kDeletion };

struct WerAlignment {
  WerReport report;
  std::vector<EditOp> ops;  // in reference/hypothesis order
};

// Unit-cost Levenshtein alignment. When several alignments reach the
// minimum, substitution is preferred over insertion over deletion while
// tracing back from the end.
WerAlignment AlignWords(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis);
WerReport Wer(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis);

}  // namespace hasr::decode

#endif  // HASR_DECODE_WER_H_
