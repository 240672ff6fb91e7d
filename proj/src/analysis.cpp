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

#include "alp/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace alp::analysis {

namespace {

void validate_ratio(double collision_ratio) {
  if (!(collision_ratio >= 0.0) || !(collision_ratio < 0.5)) {
    throw std::invalid_argument("collision ratio must lie in [0, 1/2)");
  }
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive");
  }
}

}  // namespace

double gamma(double alpha, double collision_ratio) {
  validate_alpha(alpha);
  validate_ratio(collision_ratio);
  return (alpha + 2.0) / (1.0 + alpha * collision_ratio) - 2.0;
}

WalkProbabilities walk_probabilities(double alpha, double collision_ratio) {
  const double g = gamma(alpha, collision_ratio);
  const double p = 1.0 / (g + 2.0);
  return {p, 1.0 - p};
}

double expected_error_bound(double alpha, double collision_ratio) {
  const double g = gamma(alpha, collision_ratio);
  return (0.5 + (4.0 * alpha + 4.0) / (alpha * alpha) +
          (4.0 * g + 4.0) / (g * g)) *
         alpha;
}

double tail_probability_bound(double alpha, double collision_ratio,
                              double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const auto [p, q] = walk_probabilities(alpha, collision_ratio);
  const double bound = 2.0 * std::pow(4.0 * p * q, tau / 2.0) /
                       (std::sqrt(std::numbers::pi) * (q - p));
  return std::min(bound, 1.0);
}

double error_quantile_bound(double alpha, double collision_ratio, double psi,
                            double epsilon) {
  if (!(psi > 0.0) || !(psi < 1.0)) {
    throw std::invalid_argument("psi must lie in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const auto [p, q] = walk_probabilities(alpha, collision_ratio);
  const double numerator =
      2.0 * std::log(2.0 / (psi * std::sqrt(std::numbers::pi) * (q - p)));
  return (1.0 + numerator / std::log(1.0 / (4.0 * p * q))) * alpha / epsilon;
}

double random_walk_last_nonneg_expectation(double p) {
  if (!(p > 0.0) || !(p < 0.5)) {
    throw std::invalid_argument("walk probability must lie in (0, 1/2)");
  }
  const double q = 1.0 - p;
  return 4.0 * p * q / ((q - p) * (q - p));
}

double binomial_series_closed_form(double z) {
  if (!(z >= 0.0) || !(z < 0.25)) {
    throw std::invalid_argument("series argument must lie in [0, 1/4)");
  }
  return 2.0 * z / std::pow(1.0 - 4.0 * z, 1.5);
}

double binomial_series_partial_sum(double z, std::uint32_t max_k) {
  if (!(z >= 0.0) || !(z < 0.25)) {
    throw std::invalid_argument("series argument must lie in [0, 1/4)");
  }
  // term_k = k * C(2k, k) * z^k, built up incrementally:
  // C(2(k+1), k+1) = C(2k, k) * 2(2k+1)/(k+1).
  double binom_z = 1.0;
  double sum = 0.0;
  for (std::uint32_t k = 1; k <= max_k; ++k) {
    binom_z *= z * 2.0 * (2.0 * k - 1.0) / k;
    sum += k * binom_z;
  }
  return sum;
}

double laplace_tail_bound(double psi, double epsilon) {
  if (!(psi > 0.0) || !(psi <= 1.0)) {
    throw std::invalid_argument("psi must lie in (0, 1]");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return std::log(1.0 / psi) / epsilon;
}

namespace {

struct RoundingOutcome {
  std::uint64_t y;
  double probability;
};

// Two-point law of min(RRound(value * epsilon / alpha), m).
std::vector<RoundingOutcome> rounding_outcomes(double value,
                                               const AlpParams& params) {
  const double scaled = value * params.epsilon / params.alpha;
  const double base = std::floor(scaled);
  const double frac = scaled - base;
  const auto down = static_cast<std::uint64_t>(base);
  std::vector<RoundingOutcome> outcomes;
  if (frac > 0.0) {
    outcomes.push_back({std::min<std::uint64_t>(down, params.m), 1.0 - frac});
    outcomes.push_back({std::min<std::uint64_t>(down + 1, params.m), frac});
  } else {
    outcomes.push_back({std::min<std::uint64_t>(down, params.m), 1.0});
  }
  return outcomes;
}

// Exact output distribution over all 2^(s*m) noisy bit patterns, the
// rounding randomness marginalized entry by entry.
std::vector<double> output_distribution(const SparseVector& x,
                                        const AlpParams& params,
                                        const HashFunctionSeq& hashes) {
  const std::uint32_t nbits = params.s * params.m;
  const double p = params.flip_probability();
  const double q = 1.0 - p;

  std::vector<std::vector<RoundingOutcome>> per_entry;
  per_entry.reserve(x.nnz());
  for (const Entry& e : x.entries()) {
    per_entry.push_back(rounding_outcomes(e.value, params));
  }

  // Joint rounding outcomes; bits are conditionally independent given the
  // rounded values, so each combination contributes a product law.
  std::vector<double> probabilities(1ULL << nbits, 0.0);
  std::vector<double> pow_q(nbits + 1, 1.0);
  std::vector<double> pow_p(nbits + 1, 1.0);
  for (std::uint32_t i = 1; i <= nbits; ++i) {
    pow_q[i] = pow_q[i - 1] * q;
    pow_p[i] = pow_p[i - 1] * p;
  }

  std::uint64_t combos = 1;
  for (const auto& outcomes : per_entry) combos *= outcomes.size();

  for (std::uint64_t combo = 0; combo < combos; ++combo) {
    double weight = 1.0;
    std::uint64_t pre_noise = 0;
    std::uint64_t rest = combo;
    for (std::size_t e = 0; e < per_entry.size(); ++e) {
      const auto& outcomes = per_entry[e];
      const RoundingOutcome& o = outcomes[rest % outcomes.size()];
      rest /= outcomes.size();
      weight *= o.probability;
      const std::uint64_t index = x.entries()[e].index;
      for (std::uint64_t b = 0; b < o.y; ++b) {
        const std::uint32_t row =
            hashes.eval_unchecked(static_cast<std::uint32_t>(b), index);
        pre_noise |= 1ULL << (b * params.s + row);
      }
    }
    if (weight == 0.0) continue;
    for (std::uint64_t z = 0; z < probabilities.size(); ++z) {
      const int flipped = std::popcount(z ^ pre_noise);
      probabilities[z] += weight * pow_p[flipped] * pow_q[nbits - flipped];
    }
  }
  return probabilities;
}

}  // namespace

DpRatioResult dp_ratio_oracle(const SparseVector& x, const SparseVector& x2,
                              const AlpParams& params,
                              const HashFunctionSeq& hashes) {
  if (x.dimension() != x2.dimension()) {
    throw std::invalid_argument("inputs must share a dimension");
  }
  if (hashes.range() != params.s || hashes.size() != params.m ||
      hashes.domain() != x.dimension()) {
    throw std::invalid_argument("hash sequence shape does not match the parameters");
  }
  const std::uint64_t nbits =
      static_cast<std::uint64_t>(params.s) * params.m;
  if (nbits > 20) {
    throw std::length_error("output space too large to enumerate (s*m > 20)");
  }
  if (x.nnz() > 10 || x2.nnz() > 10) {
    throw std::length_error("too many rounding combinations to enumerate");
  }

  const std::vector<double> pa = output_distribution(x, params, hashes);
  const std::vector<double> pb = output_distribution(x2, params, hashes);
  DpRatioResult result{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t z = 0; z < pa.size(); ++z) {
    const double ratio = pa[z] / pb[z];
    result.max_ratio = std::max(result.max_ratio, ratio);
    result.min_ratio = std::min(result.min_ratio, ratio);
  }
  return result;
}

}  // namespace alp::analysis
