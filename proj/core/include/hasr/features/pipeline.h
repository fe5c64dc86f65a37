// core/include/hasr/features/pipeline.h

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

#ifndef HASR_FEATURES_PIPELINE_H_
#define HASR_FEATURES_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "hasr/features/lda.h"
#include "hasr/features/transforms.h"

namespace hasr::features {

// Steps applied to per-utterance frames before they reach a network:
// per-side CMVN, optional LDA projection (of the normalized frames),
// optional deltas, then the input transform. Textual form is a
// comma-separated list such as "cmvn,deltas,cnn:2" or "cmvn,lda:20,splice:4";
// the input transform must come last.
struct FeaturePipeline {
  bool cmvn = true;
  int lda_dim = 0;  // 0 disables LDA
  bool deltas = false;
  InputTransform input;

  static FeaturePipeline Parse(const std::string& text);
  std::string ToString() const;
  int FrameDim(int raw_dim) const;  // width after cmvn/lda/deltas
  int InputDim(int raw_dim) const;
};

// Runs the pipeline on a set of utterances. When the pipeline uses LDA,
// `lda` must either hold an estimated transform or be empty together with
// non-null `targets`, in which case the transform is estimated from these
// utterances (after CMVN) and stored in `*lda`.
std::vector<Matrix> ApplyPipeline(const std::vector<Matrix>& utterances, const std::vector<std::string>& side_ids,
                                  const FeaturePipeline& pipeline, std::optional<LdaTransform>* lda = nullptr,
                                  const std::vector<std::vector<StateId>>* targets = nullptr);

}  // namespace hasr::features

#endif  // HASR_FEATURES_PIPELINE_H_
