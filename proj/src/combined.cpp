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

#include "alp/combined.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alp {

namespace {

void validate_config(const CombinedConfig& config) {
  if (!(config.split.epsilon1 > 0.0) || !(config.split.epsilon2 > 0.0)) {
    throw std::invalid_argument("both budget shares must be positive");
  }
  if (config.mode == ThresholdMode::approximate &&
      !(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("approximate mode requires delta in (0, 1)");
  }
  if (config.mode == ThresholdMode::pure && config.delta != 0.0) {
    throw std::invalid_argument("pure mode requires delta = 0");
  }
}

double threshold_for(const CombinedConfig& config, std::uint64_t dimension) {
  if (config.mode == ThresholdMode::pure) {
    if (dimension < 3) {
      throw std::invalid_argument("pure mode requires d >= 3");
    }
    return std::log(static_cast<double>(dimension) / 2.0) / config.split.epsilon1;
  }
  return std::log(1.0 / config.delta) / config.split.epsilon2 + 2.0;
}

}  // namespace

std::vector<std::string> combined_config_warnings(const CombinedConfig& config,
                                                  std::uint32_t sparsity) {
  std::vector<std::string> warnings;
  if (config.mode == ThresholdMode::approximate && sparsity > 0 &&
      config.delta > 1.0 / static_cast<double>(sparsity)) {
    warnings.push_back(
        "delta exceeds 1/k; the maximum-error guarantee assumes delta = O(1/k)");
  }
  return warnings;
}

CombinedRepresentation::CombinedRepresentation(ThresholdMode mode,
                                               BudgetSplit split, double delta,
                                               double threshold,
                                               NoisySparseVector noisy,
                                               Embedding embedding)
    : mode_(mode),
      split_(split),
      delta_(delta),
      threshold_(threshold),
      noisy_(std::move(noisy)),
      embedding_(std::move(embedding)) {
  if (embedding_.params().beta != threshold_) {
    throw std::invalid_argument("embedding cap must equal the threshold");
  }
  if (embedding_.dimension() != noisy_.dimension()) {
    throw std::invalid_argument("component dimensions disagree");
  }
}

CombinedRepresentation combined_project(const SparseVector& x,
                                        const CombinedConfig& config,
                                        RandomnessStream& rng) {
  RandomnessStream threshold_rng = rng.substream(0);
  RandomnessStream hash_rng = rng.substream(1);
  RandomnessStream alp_rng = rng.substream(2);
  return combined_project(x, config, threshold_rng, hash_rng, alp_rng);
}

CombinedRepresentation combined_project(const SparseVector& x,
                                        const CombinedConfig& config,
                                        RandomnessStream& threshold_rng,
                                        RandomnessStream& hash_rng,
                                        RandomnessStream& alp_rng) {
  validate_config(config);
  const double t = threshold_for(config, x.dimension());

  const ThresholdParams thr_params =
      config.mode == ThresholdMode::pure
          ? ThresholdParams::pure(config.split.epsilon1, t)
          : ThresholdParams::approximate(config.split.epsilon1, config.delta, t);
  NoisySparseVector noisy =
      config.mode == ThresholdMode::pure
          ? threshold_pure(x, thr_params, threshold_rng)
          : threshold_approx(x, thr_params, threshold_rng);

  const AlpParams alp_params =
      AlpParams::create(config.alpha, t, config.s, config.split.epsilon2);
  HashFunctionSeq hashes = HashFunctionSeq::sample(
      x.dimension(), alp_params.s, alp_params.m, hash_rng);
  Embedding embedding = alp_project(x, alp_params, hashes, alp_rng);

  return CombinedRepresentation(config.mode, config.split, config.delta, t,
                                std::move(noisy), std::move(embedding));
}

double combined_estimate(const CombinedRepresentation& rep, std::uint64_t i) {
  if (i >= rep.dimension()) {
    throw std::out_of_range("index outside the dimension");
  }
  const double stored = rep.noisy().value_at(i);
  const double value = stored != 0.0 ? stored : alp_estimate(rep.embedding(), i);
  return std::clamp(value, 0.0, rep.bound());
}

SignedCombinedRepresentation signed_project(const SignedSparseVector& v,
                                            const CombinedConfig& config,
                                            RandomnessStream& rng) {
  auto [positive, negative] = v.decompose();
  RandomnessStream pos_rng = rng.substream(0);
  RandomnessStream neg_rng = rng.substream(1);
  return SignedCombinedRepresentation{
      combined_project(positive, config, pos_rng),
      combined_project(negative, config, neg_rng)};
}

double signed_estimate(const SignedCombinedRepresentation& rep,
                       std::uint64_t i) {
  return combined_estimate(rep.positive, i) - combined_estimate(rep.negative, i);
}

}  // namespace alp
