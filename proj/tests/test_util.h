// tests/test_util.h

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

#ifndef HASR_TESTS_TEST_UTIL_H_
#define HASR_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "hasr/common/random.h"
#include "hasr/common/types.h"
#include "hasr/nn/network.h"

namespace hasr::testing {

inline Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scale * UniformReal(rng, -1.0, 1.0);
  return m;
}

inline Vector RandomVector(Eigen::Index n, Rng& rng, double scale = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * UniformReal(rng, -1.0, 1.0);
  return v;
}

inline double RelativeError(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-7});
  return std::abs(analytic - numeric) / denom;
}

// Mean cross-entropy computed with an eval-mode forward pass.
inline double MeanLoss(const nn::NetworkSpec& spec, const nn::ModelParams& params,
                       const nn::Minibatch& batch) {
  const Matrix lp =
      nn::NetworkForward(spec, params, batch.NetworkInput(), nn::Mode::kEval).log_posteriors;
  double loss = 0;
  for (Eigen::Index n = 0; n < lp.rows(); ++n) loss -= lp(n, batch.targets[n]);
  return loss / static_cast<double>(lp.rows());
}

// Central-difference check of the analytic parameter gradient along
// `probes` random directions, each spanning 5 randomly chosen scalar
// parameters. Returns the worst relative error.
inline double ParamGradientError(const nn::NetworkSpec& spec, const nn::ModelParams& params,
                                 const nn::Minibatch& batch, int probes, Rng& rng,
                                 double step = 1e-5) {
  const nn::BackpropResult br = nn::Backprop(spec, params, batch);
  struct Slot {
    std::size_t layer;
    int which;  // 0 weights, 1 bias, 2 recurrent
    Eigen::Index index;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    const auto& p = params.layers[i];
    for (Eigen::Index k = 0; k < p.weights.size(); ++k) slots.push_back({i, 0, k});
    for (Eigen::Index k = 0; k < p.bias.size(); ++k) slots.push_back({i, 1, k});
    for (Eigen::Index k = 0; k < p.recurrent.size(); ++k) slots.push_back({i, 2, k});
  }
  auto ref = [](nn::ModelParams& m, const Slot& s) -> double& {
    auto& l = m.layers[s.layer];
    if (s.which == 0) return l.weights.data()[s.index];
    if (s.which == 1) return l.bias.data()[s.index];
    return l.recurrent.data()[s.index];
  };
  double worst = 0.0;
  for (int probe = 0; probe < probes; ++probe) {
    std::vector<std::pair<Slot, double>> dir;
    for (int d = 0; d < 5; ++d) {
      dir.push_back({slots[UniformIndex(rng, slots.size())], UniformReal(rng, -1.0, 1.0)});
    }
    double analytic = 0.0;
    nn::ModelParams grads = br.gradients;
    for (auto& [s, v] : dir) analytic += v * ref(grads, s);
    nn::ModelParams plus = params, minus = params;
    for (auto& [s, v] : dir) {
      ref(plus, s) += step * v;
      ref(minus, s) -= step * v;
    }
    const double numeric =
        (MeanLoss(spec, plus, batch) - MeanLoss(spec, minus, batch)) / (2.0 * step);
    worst = std::max(worst, RelativeError(analytic, numeric));
  }
  return worst;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("hasr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string File(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace hasr::testing

#endif  // HASR_TESTS_TEST_UTIL_H_
