// Copyright 2026 The ALP Mechanism Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The ALP (Approximate Laplace Projection) mechanism: project a sparse
// vector into a noisy unary/hashed bit embedding, and estimate entries
// back out of it by maximizing a +/-1 prefix walk over the bits an index
// hashes to.

#ifndef ALP_ALP_MECHANISM_HPP_
#define ALP_ALP_MECHANISM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "alp/bit_matrix.hpp"
#include "alp/hashing.hpp"
#include "alp/random.hpp"
#include "alp/sparse_vector.hpp"

namespace alp {

// Mechanism configuration. alpha trades noise against scaling, beta caps
// the representable value, s is the hash range, and the column count is
// always m = ceil(beta * epsilon / alpha).
struct AlpParams {
  double alpha;
  double beta;
  double epsilon;
  std::uint32_t s;
  std::uint32_t m;

  static AlpParams create(double alpha, double beta, std::uint32_t s,
                          double epsilon);

  // Randomized-response flip probability, 1 / (alpha + 2).
  double flip_probability() const { return 1.0 / (alpha + 2.0); }

  bool operator==(const AlpParams&) const = default;
};

enum class NoiseMode {
  standard,
  // Test hook: deterministic rounding and no bit flips, so the pre-noise
  // embedding can be inspected directly.
  noiseless,
};

// Immutable private representation: the noisy s x m bit matrix plus the
// hash functions that place each entry's unary bits, together with the
// input shape needed to clamp estimates.
class Embedding {
 public:
  Embedding(AlpParams params, std::uint64_t dimension, double bound,
            std::uint32_t sparsity, HashFunctionSeq hashes, BitMatrix bits);

  const AlpParams& params() const { return params_; }
  std::uint64_t dimension() const { return dimension_; }
  double bound() const { return bound_; }
  std::uint32_t sparsity() const { return sparsity_; }
  const HashFunctionSeq& hashes() const { return hashes_; }
  const BitMatrix& bits() const { return bits_; }

  bool operator==(const Embedding&) const = default;

 private:
  AlpParams params_;
  std::uint64_t dimension_;
  double bound_;
  std::uint32_t sparsity_;
  HashFunctionSeq hashes_;
  BitMatrix bits_;
};

// Everything the estimator computed for one index: the prefix walk
// f(0..m), the argmax set P, and the tie average as an exact rational
// (index_sum / count) alongside its real value.
struct EstimationTrace {
  std::vector<std::int64_t> prefix;
  std::vector<std::uint32_t> argmax;
  std::uint64_t argmax_index_sum;
  std::uint64_t argmax_count;
  double y_estimate;
};

// 1-DP projection; requires params.epsilon == 1.
Embedding alp1_project(const SparseVector& x, const AlpParams& params,
                       const HashFunctionSeq& hashes, RandomnessStream& rng,
                       NoiseMode mode = NoiseMode::standard);

// epsilon-DP projection: scales the input by epsilon and runs the 1-DP
// projection with the cap beta * epsilon.
Embedding alp_project(const SparseVector& x, const AlpParams& params,
                      const HashFunctionSeq& hashes, RandomnessStream& rng,
                      NoiseMode mode = NoiseMode::standard);

// Estimate of entry i, clamped to [0, bound]. alp1_estimate requires an
// epsilon = 1 embedding; alp_estimate additionally divides by epsilon.
double alp1_estimate(const Embedding& embedding, std::uint64_t i);
double alp_estimate(const Embedding& embedding, std::uint64_t i);

std::pair<double, EstimationTrace> alp1_estimate_with_trace(
    const Embedding& embedding, std::uint64_t i);
std::pair<double, EstimationTrace> alp_estimate_with_trace(
    const Embedding& embedding, std::uint64_t i);

}  // namespace alp

#endif  // ALP_ALP_MECHANISM_HPP_
