// core/src/features/pipeline.cc

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

#include "hasr/features/pipeline.h"

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::features {

FeaturePipeline FeaturePipeline::Parse(const std::string& text) {
  FeaturePipeline p;
  p.cmvn = false;
  bool have_input = false;
  std::string rest = text;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t comma = rest.find(',', start);
    const std::string tok(Trim(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    start = comma == std::string::npos ? rest.size() + 1 : comma + 1;
    if (tok.empty()) throw ConfigError("empty step in feature pipeline '" + text + "'");
    if (have_input) throw ConfigError("input transform must be the last step of '" + text + "'");
    if (tok == "cmvn") {
      p.cmvn = true;
    } else if (tok == "deltas") {
      p.deltas = true;
    } else if (StartsWith(tok, "lda:")) {
      long long dim = 0;
      if (!ParseInt(std::string_view(tok).substr(4), &dim) || dim < 1) {
        throw ConfigError("bad LDA dimension in '" + tok + "'");
      }
      p.lda_dim = static_cast<int>(dim);
    } else {
      p.input = InputTransform::Parse(tok);
      have_input = true;
    }
  }
  return p;
}

std::string FeaturePipeline::ToString() const {
  std::string out;
  auto add = [&](const std::string& s) { out += (out.empty() ? "" : ",") + s; };
  if (cmvn) add("cmvn");
  if (lda_dim > 0) add("lda:" + std::to_string(lda_dim));
  if (deltas) add("deltas");
  add(input.ToString());
  return out;
}

int FeaturePipeline::FrameDim(int raw_dim) const {
  const int d = lda_dim > 0 ? lda_dim : raw_dim;
  return deltas ? 3 * d : d;
}

int FeaturePipeline::InputDim(int raw_dim) const { return input.OutputDim(FrameDim(raw_dim)); }

std::vector<Matrix> ApplyPipeline(const std::vector<Matrix>& utterances, const std::vector<std::string>& side_ids,
                                  const FeaturePipeline& pipeline, std::optional<LdaTransform>* lda,
                                  const std::vector<std::vector<StateId>>* targets) {
  if (side_ids.size() != utterances.size()) throw ShapeError("need one side id per utterance");
  std::vector<FeatureMatrix> feats;
  feats.reserve(utterances.size());
  for (const Matrix& m : utterances) feats.push_back({m, FeatureKind::kRaw});
  if (pipeline.cmvn) CmvnBySide(&feats, side_ids);

  if (pipeline.lda_dim > 0) {
    if (lda == nullptr) throw ConfigError("feature pipeline uses LDA but no transform slot was given");
    if (!lda->has_value()) {
      if (targets == nullptr || targets->size() != utterances.size()) {
        throw ConfigError("estimating LDA needs one target sequence per utterance");
      }
      Eigen::Index rows = 0;
      for (const auto& f : feats) rows += f.values.rows();
      Matrix all(rows, feats.empty() ? 0 : feats[0].values.cols());
      std::vector<int> labels;
      Eigen::Index r = 0;
      for (std::size_t i = 0; i < feats.size(); ++i) {
        if (static_cast<std::size_t>(feats[i].values.rows()) != (*targets)[i].size()) {
          throw ShapeError("utterance " + std::to_string(i) + " has mismatched targets");
        }
        all.middleRows(r, feats[i].values.rows()) = feats[i].values;
        r += feats[i].values.rows();
        labels.insert(labels.end(), (*targets)[i].begin(), (*targets)[i].end());
      }
      *lda = EstimateLda(all, labels, pipeline.lda_dim);
    }
    for (auto& f : feats) f = (*lda)->Apply(f);
  }

  std::vector<Matrix> out;
  out.reserve(feats.size());
  for (auto& f : feats) {
    if (pipeline.deltas) f = AddDeltas(f);
    out.push_back(BuildNetworkInput(f.values, pipeline.input));
  }
  return out;
}

}  // namespace hasr::features
