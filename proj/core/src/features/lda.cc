// core/src/features/lda.cc

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

#include "hasr/features/lda.h"

#include <Eigen/Eigenvalues>
#include <map>

#include "hasr/common/errors.h"

namespace hasr::features {

FeatureMatrix LdaTransform::Apply(const FeatureMatrix& frames) const {
  if (frames.dim() != projection.cols()) {
    throw ShapeError("lda: frames have dimension " + std::to_string(frames.dim()) + ", transform expects " +
                     std::to_string(projection.cols()));
  }
  FeatureMatrix out;
  out.kind = FeatureKind::kLda;
  out.values = frames.values * projection.transpose();
  return out;
}

ScatterMatrices ComputeScatter(const Matrix& frames, const std::vector<int>& labels) {
  if (frames.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw ShapeError("lda: " + std::to_string(labels.size()) + " labels for " + std::to_string(frames.rows()) +
                     " frames");
  }
  if (frames.rows() == 0) throw DataError("lda: no frames");
  const Eigen::Index dim = frames.cols();
  std::map<int, std::pair<RowVector, double>> sums;
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    auto [it, fresh] = sums.try_emplace(labels[t], RowVector::Zero(dim), 0.0);
    it->second.first += frames.row(t);
    it->second.second += 1.0;
  }
  const RowVector global = frames.colwise().mean();
  ScatterMatrices out;
  out.num_classes = static_cast<int>(sums.size());
  out.between = Matrix::Zero(dim, dim);
  std::map<int, RowVector> means;
  for (const auto& [label, acc] : sums) {
    const RowVector mu = acc.first / acc.second;
    means.emplace(label, mu);
    const RowVector diff = mu - global;
    out.between.noalias() += acc.second * diff.transpose() * diff;
  }
  Matrix centered(frames.rows(), dim);
  for (Eigen::Index t = 0; t < frames.rows(); ++t) centered.row(t) = frames.row(t) - means.at(labels[t]);
  out.within = centered.transpose() * centered;
  double ridge = 1e-6 * out.within.trace() / static_cast<double>(dim);
  if (!(ridge > 0)) ridge = 1e-6;
  out.within.diagonal().array() += ridge;
  return out;
}

LdaTransform EstimateLda(const Matrix& frames, const std::vector<int>& labels, int target_dim) {
  if (target_dim < 1) throw ConfigError("lda target dimension must be at least 1");
  if (target_dim > frames.cols()) {
    throw ConfigError("lda target dimension " + std::to_string(target_dim) + " exceeds source dimension " +
                      std::to_string(frames.cols()));
  }
  const ScatterMatrices scatter = ComputeScatter(frames, labels);
  if (scatter.num_classes < 2) throw ConfigError("lda needs at least two classes (no between-class scatter)");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter.between, scatter.within);
  if (solver.info() != Eigen::Success) throw NumericError("lda: generalized eigen-decomposition failed");
  const Eigen::Index dim = frames.cols();
  LdaTransform out;
  out.num_classes = scatter.num_classes;
  out.projection.resize(target_dim, dim);
  out.eigenvalues.resize(target_dim);
  for (int r = 0; r < target_dim; ++r) {
    const Eigen::Index src = dim - 1 - r;  // eigenvalues come back ascending
    Vector v = solver.eigenvectors().col(src);
    v /= std::sqrt(v.dot(scatter.within * v));
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    out.projection.row(r) = v.transpose();
    out.eigenvalues(r) = solver.eigenvalues()(src);
  }
  return out;
}

}  // namespace hasr::features
