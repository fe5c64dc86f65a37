// core/src/decode/priors.cc

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

#include "hasr/decode/priors.h"

#include <cmath>
#include <fstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::decode {

void PriorVector::Validate() const {
  if (p.size() == 0) throw ConfigError("prior vector is empty");
  if (!(p.array() > 0).all() || !p.allFinite()) throw NumericError("prior vector has a non-positive entry");
  if (std::abs(p.sum() - 1.0) > 1e-9) throw NumericError("prior vector does not sum to one");
}

PriorVector EstimatePriors(const std::vector<std::vector<StateId>>& alignments, int num_states, double alpha) {
  if (num_states < 1) throw ConfigError("prior estimation needs at least one state");
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw ConfigError("prior smoothing count must be finite and >= 0");
  Vector counts = Vector::Zero(num_states);
  double total = 0;
  for (const auto& ali : alignments) {
    for (StateId s : ali) {
      if (s < 0 || s >= num_states) {
        throw DataError("alignment state " + std::to_string(s) + " outside [0, " + std::to_string(num_states) + ")");
      }
      counts(s) += 1.0;
      total += 1.0;
    }
  }
  if (total == 0) throw DataError("cannot estimate priors from empty alignments");
  PriorVector out;
  out.p = (counts.array() + alpha) / (total + alpha * num_states);
  if (!(out.p.array() > 0).all()) {
    throw DataError("a state never occurs in the alignments and smoothing is zero; its prior would be 0");
  }
  return out;
}

Matrix AcousticScores(const Matrix& log_posteriors, const PriorVector& priors, double kappa) {
  if (log_posteriors.cols() != priors.size()) {
    throw ShapeError("posteriors have " + std::to_string(log_posteriors.cols()) + " states but priors have " +
                     std::to_string(priors.size()));
  }
  if (!(kappa > 0) || !std::isfinite(kappa)) throw ConfigError("acoustic scale must be positive");
  const RowVector log_prior = priors.p.array().log().transpose();
  return kappa * (log_posteriors.rowwise() - log_prior);
}

void WritePriors(const std::string& path, const PriorVector& priors) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << priors.size() << '\n';
  for (Eigen::Index i = 0; i < priors.p.size(); ++i) os << FormatDouble(priors.p(i)) << '\n';
  if (!os) throw IoError("failed writing '" + path + "'");
}

PriorVector ReadPriors(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  std::string token;
  long long k = 0;
  if (!(is >> token) || !ParseInt(token, &k) || k < 1) throw ParseError(path + ": expected a state count");
  PriorVector out;
  out.p.resize(k);
  for (long long i = 0; i < k; ++i) {
    double v = 0;
    if (!(is >> token) || !ParseDouble(token, &v)) {
      throw ParseError(path + ": expected " + std::to_string(k) + " probabilities, got " + std::to_string(i));
    }
    out.p(i) = v;
  }
  if (is >> token) throw ParseError(path + ": trailing content after " + std::to_string(k) + " probabilities");
  out.Validate();
  return out;
}

}  // namespace hasr::decode
