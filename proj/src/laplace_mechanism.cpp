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

#include "alp/laplace_mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alp {

namespace {
// Dense output; past this the vector alone is tens of gigabytes.
constexpr std::uint64_t kMaxDenseDimension = 1ULL << 31;
}  // namespace

PrivacyBudget PrivacyBudget::validated(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
  return PrivacyBudget{epsilon, delta};
}

std::vector<double> laplace_mechanism(const SparseVector& x,
                                      const PrivacyBudget& budget,
                                      RandomnessStream& rng) {
  PrivacyBudget::validated(budget.epsilon, budget.delta);
  if (budget.delta != 0.0) {
    throw std::invalid_argument("laplace_mechanism requires a pure budget (delta = 0)");
  }
  if (x.dimension() > kMaxDenseDimension) {
    throw std::length_error("dimension too large for dense materialization");
  }
  const double scale = 1.0 / budget.epsilon;
  std::vector<double> out(x.dimension(), 0.0);
  for (const Entry& e : x.entries()) out[e.index] = e.value;
  for (double& v : out) {
    v = std::clamp(v + rng.laplace(scale), 0.0, x.bound());
  }
  return out;
}

}  // namespace alp
