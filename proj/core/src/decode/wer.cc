// core/src/decode/wer.cc

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

#include "hasr/decode/wer.h"

#include <algorithm>

namespace hasr::decode {

double WerReport::Rate() const {
  if (reference_words == 0) return static_cast<double>(Errors());
  return static_cast<double>(Errors()) / static_cast<double>(reference_words);
}

WerReport& WerReport::operator+=(const WerReport& other) {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  reference_words += other.reference_words;
  return *this;
}

WerAlignment AlignWords(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i][j - 1] + 1, d[i - 1][j] + 1});
    }
  }
  WerAlignment out;
  out.report.reference_words = static_cast<long>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      const bool match = ref[i - 1] == hyp[j - 1];
      out.ops.push_back(match ? EditOp::kMatch : EditOp::kSubstitution);
      if (!match) ++out.report.substitutions;
      --i, --j;
    } else if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
      out.ops.push_back(EditOp::kInsertion);
      ++out.report.insertions;
      --j;
    } else {
      out.ops.push_back(EditOp::kDeletion);
      ++out.report.deletions;
      --i;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

WerReport Wer(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis) {
  return AlignWords(reference, hypothesis).report;
}

}  // namespace hasr::decode
