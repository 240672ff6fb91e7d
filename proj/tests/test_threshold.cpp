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

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "alp/threshold.hpp"
#include "support/stats.hpp"

using alp::Entry;
using alp::NoisySparseVector;
using alp::RandomnessStream;
using alp::SparseVector;
using alp::ThresholdMode;
using alp::ThresholdParams;

namespace {

// Dense oracle: noise every coordinate explicitly, keep values >= t.
NoisySparseVector threshold_pure_naive(const SparseVector& x,
                                       const ThresholdParams& params,
                                       RandomnessStream& rng) {
  std::vector<Entry> kept;
  for (std::uint64_t i = 0; i < x.dimension(); ++i) {
    const double noisy = x.value_at(i) + rng.laplace(1.0 / params.epsilon);
    if (noisy >= params.t) kept.push_back({i, noisy});
  }
  return NoisySparseVector(x.dimension(), x.bound(), std::move(kept));
}

}  // namespace

TEST_SUITE("threshold") {

TEST_CASE("default thresholds match their closed forms") {
  const auto pure = ThresholdParams::pure_default(1.0, 1000);
  CHECK(pure.t == doctest::Approx(6.214608098422191).epsilon(1e-12));
  const auto pure_scaled = ThresholdParams::pure_default(0.5, 1000000);
  CHECK(pure_scaled.t == doctest::Approx(std::log(5e5) / 0.5).epsilon(1e-12));
  const auto approx = ThresholdParams::approximate_default(1.0, 1e-6);
  CHECK(approx.t == doctest::Approx(15.815510557964274).epsilon(1e-12));

  CHECK_THROWS_AS(ThresholdParams::pure_default(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdParams::approximate_default(1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThresholdParams::pure(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdParams::pure(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("noisy vector validates and reads like a map") {
  const NoisySparseVector v(10, 5.0, {{2, 7.5}, {8, 6.1}});
  CHECK(v.value_at(2) == 7.5);
  CHECK(v.value_at(3) == 0.0);
  CHECK(v.contains(8));
  CHECK_FALSE(v.contains(0));
  CHECK_THROWS_AS(v.value_at(10), std::out_of_range);
  CHECK_THROWS_AS(NoisySparseVector(10, 5.0, {{8, 1.0}, {2, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("pure mode keeps about one true zero at the default threshold") {
  const std::uint64_t d = 1000;
  const auto x = SparseVector::zero(d, 10.0, 5);
  const auto params = ThresholdParams::pure_default(1.0, d);
  RandomnessStream rng(31);
  const int runs = 30000;
  double survivors = 0.0;
  for (int run = 0; run < runs; ++run) {
    const auto out = threshold_pure(x, params, rng);
    survivors += static_cast<double>(out.size());
    for (const Entry& e : out.entries()) CHECK(e.value >= params.t);
  }
  // Survival probability per zero is 1/d, so the mean count is ~1.
  CHECK(survivors / runs == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("sparse path matches the dense oracle in distribution") {
  const std::uint64_t d = 50;
  const SparseVector x(d, 20.0, 5,
                       {{3, 2.0}, {10, 6.5}, {20, 8.0}, {30, 12.0}, {40, 0.5}});
  const auto params = ThresholdParams::pure_default(1.0, d);
  RandomnessStream fast_rng(32);
  RandomnessStream naive_rng(33);

  const int runs = 30000;
  std::vector<std::uint64_t> count_fast, count_naive;
  std::vector<double> values_fast, values_naive;
  for (int run = 0; run < runs; ++run) {
    const auto fast = threshold_pure(x, params, fast_rng);
    const auto naive = threshold_pure_naive(x, params, naive_rng);
    count_fast.push_back(fast.size());
    count_naive.push_back(naive.size());
    for (const Entry& e : fast.entries()) values_fast.push_back(e.value);
    for (const Entry& e : naive.entries()) values_naive.push_back(e.value);
  }
  CHECK(testing_support::chi2_two_sample_p(count_fast, count_naive) > 0.01);
  CHECK(testing_support::ks_two_sample_p(values_fast, values_naive) > 0.01);
}

TEST_CASE("approximate mode never releases a true zero") {
  const SparseVector x(20, 5.0, 4, {{1, 0.4}, {7, 3.0}, {15, 5.0}});
  const auto params = ThresholdParams::approximate_default(1.0, 0.05);
  RandomnessStream rng(34);
  for (int run = 0; run < 5000; ++run) {
    const auto out = threshold_approx(x, params, rng);
    CHECK(out.size() <= x.sparsity());
    for (const Entry& e : out.entries()) {
      CHECK(x.value_at(e.index) != 0.0);
      CHECK(e.value >= params.t);
    }
  }
}

TEST_CASE("small entries release at rate x * delta / (2 e^eps)") {
  const double delta = 0.01;
  const double x_value = 0.5;
  const SparseVector x(4, 1.0, 1, {{2, x_value}});
  const auto params = ThresholdParams::approximate_default(1.0, delta);
  RandomnessStream rng(35);
  const int runs = 300000;
  int released = 0;
  for (int run = 0; run < runs; ++run) {
    released += threshold_approx(x, params, rng).size();
  }
  const double expected = x_value * delta / (2.0 * std::exp(1.0));
  const double sigma = std::sqrt(expected * (1.0 - expected) / runs);
  CHECK(std::abs(static_cast<double>(released) / runs - expected) <=
        3.0 * sigma);
}

TEST_CASE("entries at or above one bypass the rounding step") {
  // With x = 2.7 the release probability is exp(-(t-2.7))/2; had the value
  // been rounded to {2, 3} it would be noticeably smaller.
  const double t = 6.0;
  const auto params = ThresholdParams::approximate(1.0, 0.05, t);
  const SparseVector x(3, 10.0, 1, {{1, 2.7}});
  RandomnessStream rng(36);
  const int runs = 500000;
  int released = 0;
  for (int run = 0; run < runs; ++run) {
    released += threshold_approx(x, params, rng).size();
  }
  const double expected = 0.5 * std::exp(-(t - 2.7));
  const double rounded_rate =
      0.3 * 0.5 * std::exp(-(t - 2.0)) + 0.7 * 0.5 * std::exp(-(t - 3.0));
  const double sigma = std::sqrt(expected * (1.0 - expected) / runs);
  CHECK(std::abs(static_cast<double>(released) / runs - expected) <=
        4.0 * sigma);
  CHECK(std::abs(expected - rounded_rate) > 8.0 * sigma);  // test has power
}

TEST_CASE("bounds below one are legal in approximate mode") {
  const SparseVector x(6, 0.5, 3, {{0, 0.2}, {3, 0.5}});
  const auto params = ThresholdParams::approximate_default(2.0, 0.1);
  RandomnessStream rng(37);
  for (int run = 0; run < 2000; ++run) {
    const auto out = threshold_approx(x, params, rng);
    CHECK(out.size() <= x.sparsity());
  }
}

TEST_CASE("approximate-mode maximum error stays within the stated order") {
  const std::uint32_t k = 8;
  const double delta = 0.01;
  const double epsilon = 1.0;
  const auto params = ThresholdParams::approximate_default(epsilon, delta);
  std::vector<Entry> entries;
  for (std::uint32_t j = 0; j < k; ++j) {
    entries.push_back({j, params.t});  // hardest case: values at the cut
  }
  const SparseVector x(100, 2.0 * params.t, k, entries);
  RandomnessStream rng(38);
  const int runs = 20000;
  double max_err_sum = 0.0;
  for (int run = 0; run < runs; ++run) {
    const auto out = threshold_approx(x, params, rng);
    double max_err = 0.0;
    for (const Entry& e : x.entries()) {
      max_err = std::max(max_err, std::abs(e.value - out.value_at(e.index)));
    }
    max_err_sum += max_err;
  }
  const double bound =
      (std::log(static_cast<double>(k)) + std::log(1.0 / delta)) / epsilon +
      params.t;
  CHECK(max_err_sum / runs <= bound);
}

TEST_CASE("mode mismatches are rejected") {
  const auto pure = ThresholdParams::pure(1.0, 3.0);
  const auto approx = ThresholdParams::approximate_default(1.0, 0.01);
  const auto x = SparseVector::zero(10, 1.0, 2);
  RandomnessStream rng(39);
  CHECK_THROWS_AS(threshold_pure(x, approx, rng), std::invalid_argument);
  CHECK_THROWS_AS(threshold_approx(x, pure, rng), std::invalid_argument);
}

}  // TEST_SUITE
