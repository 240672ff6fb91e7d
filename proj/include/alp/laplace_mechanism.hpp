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

#ifndef ALP_LAPLACE_MECHANISM_HPP_
#define ALP_LAPLACE_MECHANISM_HPP_

#include <vector>

#include "alp/random.hpp"
#include "alp/sparse_vector.hpp"

namespace alp {

struct PrivacyBudget {
  double epsilon;
  double delta = 0.0;

  static PrivacyBudget pure(double epsilon) { return validated(epsilon, 0.0); }
  static PrivacyBudget validated(double epsilon, double delta);
};

// Dense Laplace release: adds independent Lap(1/epsilon) noise to every
// coordinate and clamps to [0, bound]. The output materializes all d
// coordinates; callers are responsible for keeping d small enough.
std::vector<double> laplace_mechanism(const SparseVector& x,
                                      const PrivacyBudget& budget,
                                      RandomnessStream& rng);

}  // namespace alp

#endif  // ALP_LAPLACE_MECHANISM_HPP_
