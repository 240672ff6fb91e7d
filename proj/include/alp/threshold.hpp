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
// Thresholding baselines for large entries: the pure-DP variant noises
// every coordinate (implemented sparsely with the same output
// distribution), the approximate-DP variant noises non-zero entries only.

#ifndef ALP_THRESHOLD_HPP_
#define ALP_THRESHOLD_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "alp/random.hpp"
#include "alp/sparse_vector.hpp"

namespace alp {

enum class ThresholdMode { pure, approximate };

struct ThresholdParams {
  ThresholdMode mode;
  double epsilon;
  double delta;
  double t;

  // t = ln(d/2) / epsilon; requires d >= 3 so the threshold is positive.
  static ThresholdParams pure_default(double epsilon, std::uint64_t dimension);
  static ThresholdParams pure(double epsilon, double t);

  // t = ln(1/delta) / epsilon + 2.
  static ThresholdParams approximate_default(double epsilon, double delta);
  static ThresholdParams approximate(double epsilon, double delta, double t);
};

// Sparse map of noisy values that cleared the threshold. Stored values are
// the raw noisy values (>= t); clamping to [0, bound] happens at the
// estimator. Absent indices read as zero.
class NoisySparseVector {
 public:
  NoisySparseVector(std::uint64_t dimension, double bound,
                    std::vector<Entry> entries);

  std::uint64_t dimension() const { return dimension_; }
  double bound() const { return bound_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(std::uint64_t index) const;
  // Stored value or zero; throws std::out_of_range past the dimension.
  double value_at(std::uint64_t index) const;

  bool operator==(const NoisySparseVector&) const = default;

 private:
  std::uint64_t dimension_;
  double bound_;
  std::vector<Entry> entries_;
};

// Distributionally equal to adding Lap(1/epsilon) everywhere and keeping
// values >= t, but runs in time proportional to the sparsity: the noised
// non-zero entries are kept directly, the surviving zero coordinates are
// drawn as Binomial(d - nnz, exp(-t*epsilon)/2) uniform positions with
// values from the Laplace tail conditioned on >= t.
NoisySparseVector threshold_pure(const SparseVector& x,
                                 const ThresholdParams& params,
                                 RandomnessStream& rng);

// Non-zero entries in (0, 1) are randomly rounded to {0, 1}; surviving
// non-zero values get Lap(1/epsilon) noise and are kept iff the noisy
// value clears t. The output is always k-sparse.
NoisySparseVector threshold_approx(const SparseVector& x,
                                   const ThresholdParams& params,
                                   RandomnessStream& rng);

}  // namespace alp

#endif  // ALP_THRESHOLD_HPP_
