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

#include "alp/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace alp {

namespace {

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
}

void validate_threshold(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("threshold must be positive");
  }
}

// Maps a rank among the zero coordinates to its global index by walking
// the sorted non-zero support.
std::uint64_t zero_rank_to_index(std::uint64_t rank,
                                 std::span<const Entry> support) {
  std::uint64_t index = rank;
  for (const Entry& e : support) {
    if (e.index <= index) ++index;
  }
  return index;
}

}  // namespace

ThresholdParams ThresholdParams::pure_default(double epsilon,
                                              std::uint64_t dimension) {
  validate_epsilon(epsilon);
  if (dimension < 3) {
    throw std::invalid_argument("default pure threshold requires d >= 3");
  }
  return pure(epsilon, std::log(static_cast<double>(dimension) / 2.0) / epsilon);
}

ThresholdParams ThresholdParams::pure(double epsilon, double t) {
  validate_epsilon(epsilon);
  validate_threshold(t);
  return ThresholdParams{ThresholdMode::pure, epsilon, 0.0, t};
}

ThresholdParams ThresholdParams::approximate_default(double epsilon,
                                                     double delta) {
  validate_epsilon(epsilon);
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("approximate mode requires delta in (0, 1)");
  }
  return approximate(epsilon, delta, std::log(1.0 / delta) / epsilon + 2.0);
}

ThresholdParams ThresholdParams::approximate(double epsilon, double delta,
                                             double t) {
  validate_epsilon(epsilon);
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("approximate mode requires delta in (0, 1)");
  }
  validate_threshold(t);
  return ThresholdParams{ThresholdMode::approximate, epsilon, delta, t};
}

NoisySparseVector::NoisySparseVector(std::uint64_t dimension, double bound,
                                     std::vector<Entry> entries)
    : dimension_(dimension), bound_(bound), entries_(std::move(entries)) {
  if (dimension_ == 0) throw std::invalid_argument("dimension must be positive");
  if (!(bound_ > 0.0) || !std::isfinite(bound_)) {
    throw std::invalid_argument("value bound must be positive and finite");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index >= dimension_) {
      throw std::out_of_range("entry index outside the dimension");
    }
    if (i > 0 && entries_[i].index <= entries_[i - 1].index) {
      throw std::invalid_argument("entry indices must be strictly increasing");
    }
  }
}

bool NoisySparseVector::contains(std::uint64_t index) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::uint64_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index;
}

double NoisySparseVector::value_at(std::uint64_t index) const {
  if (index >= dimension_) throw std::out_of_range("index outside the dimension");
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::uint64_t i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0.0;
}

NoisySparseVector threshold_pure(const SparseVector& x,
                                 const ThresholdParams& params,
                                 RandomnessStream& rng) {
  if (params.mode != ThresholdMode::pure) {
    throw std::invalid_argument("threshold_pure requires pure-mode parameters");
  }
  validate_threshold(params.t);
  const double scale = 1.0 / params.epsilon;

  std::vector<Entry> kept;
  for (const Entry& e : x.entries()) {
    const double noisy = e.value + rng.laplace(scale);
    if (noisy >= params.t) kept.push_back({e.index, noisy});
  }

  // Zero coordinates survive independently with probability
  // Pr[Lap(1/eps) >= t] = exp(-t*eps)/2.
  const std::uint64_t zeros = x.dimension() - x.nnz();
  const double survive_p = 0.5 * std::exp(-params.t * params.epsilon);
  const std::uint64_t survivors = rng.binomial(zeros, survive_p);

  // Floyd's sampling of `survivors` distinct ranks in [0, zeros).
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(survivors);
  for (std::uint64_t j = zeros - survivors; j < zeros; ++j) {
    const std::uint64_t r = rng.uniform_below(j + 1);
    chosen.insert(chosen.contains(r) ? j : r);
  }
  std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
  std::sort(ranks.begin(), ranks.end());
  for (const std::uint64_t rank : ranks) {
    // Laplace conditioned on >= t is t plus an exponential.
    const double value = params.t + rng.exponential(scale);
    kept.push_back({zero_rank_to_index(rank, x.entries()), value});
  }

  std::sort(kept.begin(), kept.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return NoisySparseVector(x.dimension(), x.bound(), std::move(kept));
}

NoisySparseVector threshold_approx(const SparseVector& x,
                                   const ThresholdParams& params,
                                   RandomnessStream& rng) {
  if (params.mode != ThresholdMode::approximate) {
    throw std::invalid_argument("threshold_approx requires approximate-mode parameters");
  }
  if (!(params.delta > 0.0)) {
    throw std::invalid_argument("approximate mode requires delta > 0");
  }
  validate_threshold(params.t);
  const double scale = 1.0 / params.epsilon;

  std::vector<Entry> kept;
  for (const Entry& e : x.entries()) {
    const double rounded =
        e.value < 1.0 ? static_cast<double>(random_round(e.value, rng))
                      : e.value;
    if (rounded == 0.0) continue;
    const double noisy = rounded + rng.laplace(scale);
    if (noisy >= params.t) kept.push_back({e.index, noisy});
  }
  return NoisySparseVector(x.dimension(), x.bound(), std::move(kept));
}

}  // namespace alp
