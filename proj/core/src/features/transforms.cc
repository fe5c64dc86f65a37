// core/src/features/transforms.cc

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

#include "hasr/features/transforms.h"

#include <algorithm>
#include <map>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::features {
namespace {

constexpr double kVarianceFloor = 1e-8;

Eigen::Index Clamp(Eigen::Index t, Eigen::Index rows) { return std::clamp<Eigen::Index>(t, 0, rows - 1); }

Matrix Delta(const Matrix& x) {
  const Eigen::Index rows = x.rows();
  Matrix d = Matrix::Zero(rows, x.cols());
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (int k = 1; k <= 2; ++k) d.row(t) += k * (x.row(Clamp(t + k, rows)) - x.row(Clamp(t - k, rows)));
  }
  return d / 10.0;
}

void CheckFrames(const Matrix& frames, const char* what) {
  if (frames.rows() < 1 || frames.cols() < 1) throw ShapeError(std::string(what) + ": empty feature matrix");
}

struct Moments {
  RowVector mean;
  RowVector inv_std;
};

Moments ComputeMoments(const std::vector<const Matrix*>& parts) {
  Eigen::Index dim = parts.front()->cols();
  RowVector sum = RowVector::Zero(dim), sq = RowVector::Zero(dim);
  double n = 0;
  for (const Matrix* m : parts) {
    if (m->cols() != dim) throw ShapeError("cmvn: utterances of one side differ in dimension");
    const RowVector mean = m->colwise().mean();
    sum += m->colwise().sum();
    sq += (m->rowwise() - mean).array().square().matrix().colwise().sum() +
          static_cast<double>(m->rows()) * mean.array().square().matrix();
    n += static_cast<double>(m->rows());
  }
  Moments out;
  out.mean = sum / n;
  const RowVector var = (sq / n).array() - out.mean.array().square();
  out.inv_std = var.unaryExpr([](double v) { return 1.0 / std::sqrt(std::max(v, kVarianceFloor)); });
  return out;
}

Matrix Normalize(const Matrix& m, const Moments& moments) {
  Matrix out = (m.rowwise() - moments.mean).array().rowwise() * moments.inv_std.array();
  return out;
}

}  // namespace

FeatureMatrix AddDeltas(const FeatureMatrix& frames) {
  CheckFrames(frames.values, "add_deltas");
  const Matrix d1 = Delta(frames.values);
  const Matrix d2 = Delta(d1);
  const Eigen::Index dim = frames.dim();
  FeatureMatrix out;
  out.kind = FeatureKind::kLogmelDeltas;
  out.values.resize(frames.num_frames(), 3 * dim);
  out.values << frames.values, d1, d2;
  return out;
}

FeatureMatrix Splice(const FeatureMatrix& frames, int context) {
  if (context < 0) throw ConfigError("splice context must be non-negative");
  CheckFrames(frames.values, "splice");
  const Eigen::Index rows = frames.num_frames(), dim = frames.dim();
  FeatureMatrix out;
  out.kind = FeatureKind::kSpliced;
  out.values.resize(rows, (2 * context + 1) * dim);
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (int j = -context; j <= context; ++j) {
      out.values.block(t, (j + context) * dim, 1, dim) = frames.values.row(Clamp(t + j, rows));
    }
  }
  return out;
}

FeatureMatrix Cmvn(const FeatureMatrix& frames) {
  CheckFrames(frames.values, "cmvn");
  FeatureMatrix out;
  out.kind = FeatureKind::kNormalized;
  out.values = Normalize(frames.values, ComputeMoments({&frames.values}));
  return out;
}

void CmvnBySide(std::vector<FeatureMatrix>* utterances, const std::vector<std::string>& side_ids) {
  if (utterances->size() != side_ids.size()) throw ShapeError("cmvn: one side id per utterance is required");
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < side_ids.size(); ++i) {
    CheckFrames((*utterances)[i].values, "cmvn");
    groups[side_ids[i]].push_back(i);
  }
  for (const auto& [side, members] : groups) {
    std::vector<const Matrix*> parts;
    for (std::size_t i : members) parts.push_back(&(*utterances)[i].values);
    const Moments moments = ComputeMoments(parts);
    for (std::size_t i : members) {
      (*utterances)[i].values = Normalize((*utterances)[i].values, moments);
      (*utterances)[i].kind = FeatureKind::kNormalized;
    }
  }
}

InputTransform InputTransform::Parse(const std::string& text) {
  const std::string s = Trim(text);
  InputTransform out;
  if (s.empty() || s == "none") return out;
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  if (colon == std::string::npos) throw ConfigError("input transform '" + s + "' needs a ':<n>' argument");
  long long parsed = 0;
  if (!ParseInt(s.substr(colon + 1), &parsed)) throw ConfigError("input transform '" + s + "': bad integer argument");
  const int n = static_cast<int>(parsed);
  if (name == "splice") {
    out.kind = Kind::kSplice;
    if (n < 0) throw ConfigError("splice context must be non-negative");
  } else if (name == "window") {
    out.kind = Kind::kWindow;
    if (n < 1) throw ConfigError("window length must be at least 1");
  } else if (name == "cnn") {
    out.kind = Kind::kCnn;
    if (n < 0) throw ConfigError("cnn context must be non-negative");
  } else {
    throw ConfigError("unknown input transform '" + name + "'");
  }
  out.context = n;
  return out;
}

std::string InputTransform::ToString() const {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kSplice: return "splice:" + std::to_string(context);
    case Kind::kWindow: return "window:" + std::to_string(context);
    case Kind::kCnn: return "cnn:" + std::to_string(context);
  }
  return "none";
}

int InputTransform::OutputDim(int frame_dim) const {
  switch (kind) {
    case Kind::kNone: return frame_dim;
    case Kind::kSplice: return (2 * context + 1) * frame_dim;
    case Kind::kWindow: return context * frame_dim;
    case Kind::kCnn: return CnnGeometry(frame_dim).Size();
  }
  return frame_dim;
}

nn::Geometry InputTransform::CnnGeometry(int frame_dim) const {
  if (frame_dim % 3 != 0) {
    throw ShapeError("cnn input needs [static|delta|delta-delta] frames; width " + std::to_string(frame_dim) +
                     " is not a multiple of 3");
  }
  return nn::Geometry{frame_dim / 3, 2 * context + 1, 3};
}

Matrix BuildNetworkInput(const Matrix& frames, const InputTransform& transform) {
  CheckFrames(frames, "network input");
  const Eigen::Index rows = frames.rows(), dim = frames.cols();
  switch (transform.kind) {
    case InputTransform::Kind::kNone:
      return frames;
    case InputTransform::Kind::kSplice:
      return Splice(FeatureMatrix{frames, FeatureKind::kRaw}, transform.context).values;
    case InputTransform::Kind::kWindow: {
      Matrix out(rows, transform.context * dim);
      for (Eigen::Index t = 0; t < rows; ++t) {
        for (int j = 0; j < transform.context; ++j) {
          out.block(t, j * dim, 1, dim) = frames.row(Clamp(t + j, rows));
        }
      }
      return out;
    }
    case InputTransform::Kind::kCnn: {
      const nn::Geometry g = transform.CnnGeometry(static_cast<int>(dim));
      const int k = transform.context;
      Matrix out(rows, g.Size());
      for (Eigen::Index t = 0; t < rows; ++t) {
        for (int h = 0; h < g.height; ++h) {
          for (int w = 0; w < g.width; ++w) {
            const Eigen::Index src = Clamp(t - k + w, rows);
            for (int c = 0; c < 3; ++c) out(t, (h * g.width + w) * 3 + c) = frames(src, c * g.height + h);
          }
        }
      }
      return out;
    }
  }
  return frames;
}

}  // namespace hasr::features
