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
// Executable closed-form error and tail bounds for the mechanism, plus an
// exhaustive-enumeration privacy verifier for tiny embeddings.

#ifndef ALP_ANALYSIS_HPP_
#define ALP_ANALYSIS_HPP_

#include <cstdint>

#include "alp/alp_mechanism.hpp"
#include "alp/hashing.hpp"
#include "alp/sparse_vector.hpp"

namespace alp::analysis {

// Collision-adjusted walk parameter (alpha+2)/(1 + alpha*ratio) - 2, where
// ratio bounds the per-bit hash-collision probability k/s. Positive only
// for ratio < 1/2, mirroring the s > 2k requirement.
double gamma(double alpha, double collision_ratio);

// Derived two-point probabilities of the estimator's +/-1 walk above the
// stored value: p = 1/(gamma+2), q = 1-p.
struct WalkProbabilities {
  double p;
  double q;
};
WalkProbabilities walk_probabilities(double alpha, double collision_ratio);

// Upper bound on the expected per-entry error at epsilon = 1, in input
// units: (1/2 + (4a+4)/a^2 + (4g+4)/g^2) * alpha.
double expected_error_bound(double alpha, double collision_ratio);

// Upper bound on Pr[|y - y~| >= tau]: 2 (4pq)^(tau/2) / (sqrt(pi) (q-p)),
// capped at 1.
double tail_probability_bound(double alpha, double collision_ratio, double tau);

// (1 - psi)-confidence bound on |x - x~|:
// (1 + 2 ln(2 / (psi sqrt(pi) (q-p))) / ln(1/(4pq))) * alpha / epsilon.
double error_quantile_bound(double alpha, double collision_ratio, double psi,
                            double epsilon);

// Expected last non-negative step of a +/-1 walk with up-probability
// p < 1/2: 4pq / (q-p)^2.
double random_walk_last_nonneg_expectation(double p);

// Closed form of sum_k k C(2k, k) z^k = 2z / (1-4z)^(3/2) for z < 1/4,
// and the partial-sum companion used to validate it.
double binomial_series_closed_form(double z);
double binomial_series_partial_sum(double z, std::uint32_t max_k);

// (1 - psi) quantile of |Lap(1/epsilon)|: ln(1/psi) / epsilon.
double laplace_tail_bound(double psi, double epsilon);

// Exact output-distribution ratios for the projection on an enumerable
// embedding (s * m <= 20 bits). Marginalizes the per-entry random rounding
// analytically, conditions on the given hash seeds, and scans every bit
// pattern. max_ratio bounds sup_z P[z|x] / P[z|x2]; min_ratio the infimum.
struct DpRatioResult {
  double max_ratio;
  double min_ratio;
};
DpRatioResult dp_ratio_oracle(const SparseVector& x, const SparseVector& x2,
                              const AlpParams& params,
                              const HashFunctionSeq& hashes);

}  // namespace alp::analysis

#endif  // ALP_ANALYSIS_HPP_
