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

#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "alp/experiment.hpp"

namespace bench = alp::bench;
using alp::RandomnessStream;

TEST_SUITE("experiment") {

TEST_CASE("default grids mirror the sweep setup") {
  const auto alphas = bench::default_alpha_grid();
  REQUIRE(alphas.size() == 100);
  CHECK(alphas.front() == doctest::Approx(0.1));
  CHECK(alphas.back() == doctest::Approx(10.0));
  const auto collisions = bench::default_collision_grid();
  CHECK(collisions == std::vector<double>{0.0, 0.05, 0.10, 0.15, 0.20});
}

TEST_CASE("simulation is deterministic for any worker count") {
  const bench::SimCell cell{3.0, 0.1, 500.0, false};
  std::vector<double> a(20000), b(20000);
  simulate_alp1_errors(cell, RandomnessStream(91), 1, a);
  simulate_alp1_errors(cell, RandomnessStream(91), 3, b);
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);

  bench::WalkCell walk{3.0, 0.1, 256, 128};
  std::vector<double> c(20000), d(20000);
  simulate_walk_deviations(walk, RandomnessStream(92), 1, c);
  simulate_walk_deviations(walk, RandomnessStream(92), 4, d);
  CHECK(std::memcmp(c.data(), d.data(), c.size() * sizeof(double)) == 0);
}

TEST_CASE("collision-free cells have no systematic bias") {
  const bench::SimCell cell{3.0, 0.0, 5000.0, false};
  std::vector<double> errors(100000);
  simulate_alp1_errors(cell, RandomnessStream(93), 0, errors);
  const auto stats = bench::summarize_errors(errors);
  const double se = stats.std_dev / std::sqrt(static_cast<double>(errors.size()));
  CHECK(std::abs(stats.mean) <= 4.0 * se);
}

TEST_CASE("noiseless cells only carry rounding error") {
  bench::ExperimentConfig config;
  config.alpha = 3.0;
  config.collision = 0.0;
  config.trials = 20000;
  config.noiseless = true;
  config.seed = 94;
  const auto report = bench::run_histogram(config);
  CHECK(report.stats.min >= -config.alpha);
  CHECK(report.stats.max <= config.alpha);
  std::uint64_t total = 0;
  for (const auto c : report.counts) total += c;
  CHECK(total == config.trials);
}

TEST_CASE("sweep records dominate their Fig-4 bound on a small grid") {
  bench::ExperimentConfig config;
  config.alpha_grid = {1.0, 3.0};
  config.collision_grid = {0.0, 0.1};
  config.trials = 30000;
  config.seed = 95;
  const auto records = bench::run_alp1_sweep(config);
  REQUIRE(records.size() == 4);
  for (const auto& r : records) {
    CHECK(r.mean_abs_error <= r.bound);
    CHECK(r.p50 <= r.p90);
    CHECK(r.p90 <= r.p99);
    CHECK(r.trials == config.trials);
  }
  // Identical config, identical records.
  const auto again = bench::run_alp1_sweep(config);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].mean_abs_error == again[i].mean_abs_error);
    CHECK(records[i].p99 == again[i].p99);
  }
}

TEST_CASE("histogram report carries the documented overlays") {
  bench::ExperimentConfig config;
  config.alpha = 3.0;
  config.collision = 0.1;
  config.trials = 30000;
  config.seed = 96;
  const auto report = bench::run_histogram(config);
  REQUIRE(report.overlay_scales == std::vector<double>{1.0, 4.5});
  REQUIRE(report.overlay_densities.size() == 2);
  // Laplace(4.5) has standard deviation 4.5 * sqrt(2) = 6.36.
  CHECK(4.5 * std::sqrt(2.0) == doctest::Approx(6.36).epsilon(0.001));
  // Densities integrate to roughly one over the binned range.
  double mass = 0.0;
  for (const double f : report.overlay_densities[0]) mass += f * report.bin_width;
  CHECK(mass == doctest::Approx(1.0).epsilon(0.05));

  std::ostringstream out;
  write_histogram_json(out, report);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("stats").at("std_dev").get<double>() ==
        doctest::Approx(report.stats.std_dev));
  CHECK(doc.at("counts").size() == report.counts.size());
}

TEST_CASE("full-scale histogram reaches the reported extremes") {
  // Collisions skew the tails: the largest errors land in the low hundreds
  // and the most negative around minus one hundred. Order-of-magnitude
  // check only; the exact extremes are sample-dependent.
  bench::ExperimentConfig config;
  config.alpha = 3.0;
  config.collision = 0.1;
  config.trials = 1000000;
  config.seed = 120;
  const auto report = bench::run_histogram(config);
  CHECK(report.stats.min <= -40.0);
  CHECK(report.stats.min >= -350.0);
  CHECK(report.stats.max >= 100.0);
  CHECK(report.stats.max <= 700.0);
  CHECK(report.stats.mean > 0.0);  // right-shifted by collisions
}

TEST_CASE("bounds tables tabulate the closed forms over the grid") {
  bench::ExperimentConfig config;
  config.alpha_grid = {1.0, 3.0};
  config.collision_grid = {0.0, 0.1, 0.2};
  config.tau = 20.0;
  config.psi = 0.1;
  const auto table = bench::run_bounds(config);
  REQUIRE(table.records.size() == 6);
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    CHECK(table.records[i].expected_error > 0.0);
    CHECK(table.records[i].tail_probability >= 0.0);
    CHECK(table.records[i].error_quantile > 0.0);
  }
  // Monotone in the collision ratio at fixed alpha.
  CHECK(table.records[0].expected_error < table.records[2].expected_error);

  std::ostringstream out;
  write_bounds_json(out, config, table);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("records").size() == 18);
  CHECK(doc.at("records")[0].at("formula_id") == "expected_error");
}

TEST_CASE("csv output embeds provenance and parses back") {
  bench::ExperimentConfig config;
  config.alpha_grid = {3.0};
  config.collision_grid = {0.1};
  config.trials = 2000;
  config.seed = 97;
  const auto records = bench::run_alp1_sweep(config);
  std::ostringstream out;
  write_sweep_csv(out, config, records);
  const std::string text = out.str();
  CHECK(text.find("# alp ") == 0);
  CHECK(text.find("seed=97") != std::string::npos);
  CHECK(text.find("alpha,collision,") != std::string::npos);
  // One header comment pair, one column row, one record.
  int lines = 0;
  for (const char ch : text) lines += ch == '\n';
  CHECK(lines == 4);
}

TEST_CASE("end-to-end report reflects the structure it measured") {
  bench::ExperimentConfig config;
  config.dimension = 10000;
  config.bound = 5000.0;
  config.sparsity = 20;
  config.epsilon = 1.0;
  config.alpha = 3.0;
  config.trials = 5;
  config.seed = 98;
  const auto report = bench::run_end2end(config);
  CHECK(report.threshold ==
        doctest::Approx(std::log(5000.0) / 0.5).epsilon(1e-12));
  CHECK(report.m == static_cast<std::uint32_t>(
                        std::ceil(report.threshold * 0.5 / 3.0)));
  CHECK(report.s == 200);
  CHECK(report.mean_serialized_bits > 0.0);
  REQUIRE(report.probes.size() == 5);
  CHECK(report.probes[0].x_value == 0.0);
  CHECK(report.probes[2].x_value == doctest::Approx(report.threshold));
  CHECK(report.probes[4].x_value == config.bound);
  CHECK(report.timing.empty());

  std::ostringstream out;
  write_end2end_json(out, report);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("mode") == "pure");
  CHECK(doc.at("probes").size() == 5);
}

TEST_CASE("approximate end-to-end keeps m independent of the dimension") {
  bench::ExperimentConfig config;
  config.mode = alp::ThresholdMode::approximate;
  config.delta = 1e-6;
  config.bound = 100.0;
  config.sparsity = 10;
  config.trials = 3;
  config.seed = 99;
  config.dimension = 1000;
  const auto small = bench::run_end2end(config);
  config.dimension = 1000000;
  const auto large = bench::run_end2end(config);
  CHECK(small.m == large.m);
  CHECK(small.threshold == large.threshold);
}

}  // TEST_SUITE
