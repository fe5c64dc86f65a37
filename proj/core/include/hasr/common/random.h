// core/include/hasr/common/random.h

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

#ifndef HASR_COMMON_RANDOM_H_
#define HASR_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hasr {

// Engine used everywhere; std::mt19937_64 output is specified by the
// standard, so seeded runs are reproducible across platforms as long as we
// avoid the implementation-defined std distributions for anything that must
// be bit-stable. The helpers below are those replacements.
using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a salt (splitmix64).
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt);

// 64-bit FNV-1a hash, used to derive stream salts from names.
std::uint64_t HashString(std::string_view s);

// Uniform double in [0, 1) with 53 random bits.
double Uniform01(Rng& rng);

// Uniform double in [lo, hi).
double UniformReal(Rng& rng, double lo, double hi);

// Uniform integer in [0, n).
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

// Standard normal via Box-Muller (no cached second value).
double StandardNormal(Rng& rng);

// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
double Gamma(Rng& rng, double shape);

// Samples a probability vector from a symmetric Dirichlet(alpha).
std::vector<double> Dirichlet(Rng& rng, std::size_t dim, double alpha);

// Draws an index from an (unnormalized, non-negative) weight vector.
std::size_t Categorical(Rng& rng, const std::vector<double>& weights);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> RandomPermutation(Rng& rng, std::size_t n);

}  // namespace hasr

#endif  // HASR_COMMON_RANDOM_H_
