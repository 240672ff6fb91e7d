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
// Combined structure: a threshold mechanism covers large entries, an ALP
// embedding capped at beta = t covers the rest. Estimation prefers the
// stored noisy value and falls back to the embedding.

#ifndef ALP_COMBINED_HPP_
#define ALP_COMBINED_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "alp/alp_mechanism.hpp"
#include "alp/threshold.hpp"

namespace alp {

struct BudgetSplit {
  double epsilon1;
  double epsilon2;

  static BudgetSplit even(double epsilon) {
    return BudgetSplit{epsilon / 2.0, epsilon / 2.0};
  }

  double total() const { return epsilon1 + epsilon2; }

  bool operator==(const BudgetSplit&) const = default;
};

struct CombinedConfig {
  ThresholdMode mode = ThresholdMode::pure;
  BudgetSplit split;
  double delta = 0.0;  // approximate mode only
  double alpha = 3.0;
  std::uint32_t s = 0;
};

// Advisory checks that do not block construction.
std::vector<std::string> combined_config_warnings(const CombinedConfig& config,
                                                  std::uint32_t sparsity);

class CombinedRepresentation {
 public:
  CombinedRepresentation(ThresholdMode mode, BudgetSplit split, double delta,
                         double threshold, NoisySparseVector noisy,
                         Embedding embedding);

  ThresholdMode mode() const { return mode_; }
  const BudgetSplit& split() const { return split_; }
  double total_epsilon() const { return split_.total(); }
  double delta() const { return delta_; }
  double threshold() const { return threshold_; }
  const NoisySparseVector& noisy() const { return noisy_; }
  const Embedding& embedding() const { return embedding_; }
  std::uint64_t dimension() const { return noisy_.dimension(); }
  double bound() const { return noisy_.bound(); }

  bool operator==(const CombinedRepresentation&) const = default;

 private:
  ThresholdMode mode_;
  BudgetSplit split_;
  double delta_;
  double threshold_;
  NoisySparseVector noisy_;
  Embedding embedding_;
};

// Threshold choice: t = ln(d/2)/epsilon1 in pure mode,
// t = ln(1/delta)/epsilon2 + 2 in approximate mode; the embedding runs
// with beta = t and budget epsilon2. Total cost is epsilon1 + epsilon2
// (plus delta in approximate mode).
CombinedRepresentation combined_project(const SparseVector& x,
                                        const CombinedConfig& config,
                                        RandomnessStream& rng);

// Variant with caller-owned sub-streams; the two mechanism halves share
// no randomness.
CombinedRepresentation combined_project(const SparseVector& x,
                                        const CombinedConfig& config,
                                        RandomnessStream& threshold_rng,
                                        RandomnessStream& hash_rng,
                                        RandomnessStream& alp_rng);

// Stored noisy value when present, embedding estimate otherwise; clamped
// to [0, bound].
double combined_estimate(const CombinedRepresentation& rep, std::uint64_t i);

struct SignedCombinedRepresentation {
  CombinedRepresentation positive;
  CombinedRepresentation negative;
};

// Releases the positive and negated-negative halves as two independent
// combined structures, each with the full budget: the halves occupy
// disjoint coordinates of one release, and the signed l1 metric is
// preserved by the decomposition, so the per-entry error is at most twice
// the single-sided error.
SignedCombinedRepresentation signed_project(const SignedSparseVector& v,
                                            const CombinedConfig& config,
                                            RandomnessStream& rng);

double signed_estimate(const SignedCombinedRepresentation& rep, std::uint64_t i);

}  // namespace alp

#endif  // ALP_COMBINED_HPP_
