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
// Acceptance suite. Each criterion prints one PASS/FAIL line; run a single
// criterion with --criterion N. Criterion 12 shells out to the benchmark
// CLI given via --cli.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "alp/analysis.hpp"
#include "alp/combined.hpp"
#include "alp/experiment.hpp"
#include "alp/serialization.hpp"
#include "alp/threshold.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

namespace bench = alp::bench;
namespace analysis = alp::analysis;
using alp::RandomnessStream;
using alp::SparseVector;

namespace {

struct Criterion {
  bool passed = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    passed &= ok;
    if (!detail.str().empty()) detail << "; ";
    detail << (ok ? "" : "FAILED: ") << what;
  }
};

bool in_range(double v, double center, double tol) {
  return std::abs(v - center) <= tol;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// ----- criteria 1-2: the fixed-point error experiments -------------------

void run_error_experiment(Criterion& c, double collision, double mean_abs,
                          double mean_abs_tol, double std_dev,
                          double std_dev_tol, double p90, double p90_tol,
                          double mean, double mean_tol) {
  const bench::SimCell cell{3.0, collision, 5000.0, false};
  std::vector<double> errors(1000000);
  simulate_alp1_errors(cell, RandomnessStream(20260808), 0, errors);
  const bench::SummaryStats s = bench::summarize_errors(errors);
  c.check(in_range(s.mean_abs, mean_abs, mean_abs_tol),
          "mean |err| = " + fmt(s.mean_abs) + " vs " + fmt(mean_abs) + " +- " +
              fmt(mean_abs_tol));
  c.check(in_range(s.std_dev, std_dev, std_dev_tol),
          "std dev = " + fmt(s.std_dev) + " vs " + fmt(std_dev) + " +- " +
              fmt(std_dev_tol));
  c.check(in_range(s.p90_abs, p90, p90_tol),
          "P90 = " + fmt(s.p90_abs) + " vs " + fmt(p90) + " +- " + fmt(p90_tol));
  c.check(in_range(s.mean, mean, mean_tol),
          "signed mean = " + fmt(s.mean) + " vs " + fmt(mean) + " +- " +
              fmt(mean_tol));
}

void criterion_1(Criterion& c) {
  run_error_experiment(c, 0.1, 6.4, 0.3, 11.0, 0.7, 15.78, 0.8, 2.33, 0.3);
}

void criterion_2(Criterion& c) {
  run_error_experiment(c, 0.01, 4.8, 0.3, 7.8, 0.5, 11.5, 0.8, 0.18, 0.15);
}

// ----- criterion 3: closed-form pins --------------------------------------

void criterion_3(Criterion& c) {
  const double quantile = analysis::error_quantile_bound(3.0, 0.1, 0.1, 1.0);
  c.check(in_range(quantile, 75.33, 0.05),
          "error_quantile_bound(3, 0.1, 0.1, 1) = " + fmt(quantile) +
              " vs 75.33 +- 0.05");
  const auto [p, q] = analysis::walk_probabilities(3.0, 0.1);
  const double inv_4pq = 1.0 / (4.0 * p * q);
  c.check(in_range(inv_4pq, 25.0 / 19.24, 1e-3),
          "1/(4pq) = " + fmt(inv_4pq) + " vs 25/19.24 +- 1e-3");
}

// ----- criterion 4: exact privacy enumeration ------------------------------

SparseVector grid_vector(std::uint64_t d, double u, std::uint32_t k,
                         const std::vector<std::pair<std::uint64_t, double>>& vals) {
  std::vector<alp::Entry> entries;
  for (const auto& [i, v] : vals) {
    if (v > 0.0) entries.push_back({i, v});
  }
  return SparseVector(d, u, k, std::move(entries));
}

void criterion_4(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  struct Config {
    double alpha, beta, epsilon;
    std::uint32_t s;
    std::uint64_t d;
  };
  const std::vector<Config> configs = {
      {1.0, 4.0, 1.0, 3, 1},   // m = 4, 12 bits
      {1.5, 4.5, 1.0, 4, 1},   // m = 3, 12 bits
      {0.5, 6.0, 0.5, 2, 2},   // m = 6, 12 bits
  };
  const std::vector<double> grid = {0.0, 0.2,  0.45, 0.7, 1.0,  1.3, 1.55,
                                    1.8, 2.1,  2.5,  2.9, 3.25, 3.6, 3.95};

  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;
  for (const Config& cfg : configs) {
    const alp::AlpParams params =
        alp::AlpParams::create(cfg.alpha, cfg.beta, cfg.s, cfg.epsilon);
    if (static_cast<std::uint64_t>(params.s) * params.m > 12) {
      c.check(false, "configuration exceeds 12 bits");
      return;
    }
    std::vector<std::pair<SparseVector, SparseVector>> neighbor_pairs;
    if (cfg.d == 1) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
          if (grid[j] - grid[i] <= 1.0) {
            neighbor_pairs.push_back(
                {grid_vector(1, 8.0, 1, {{0, grid[i]}}),
                 grid_vector(1, 8.0, 1, {{0, grid[j]}})});
          }
        }
      }
    } else {
      const std::vector<std::pair<std::vector<double>, std::vector<double>>>
          two_dim = {
              {{0.2, 0.5}, {0.7, 0.9}},  {{0.0, 1.0}, {0.5, 0.6}},
              {{1.2, 0.0}, {1.2, 1.0}},  {{2.0, 2.0}, {1.5, 1.7}},
              {{0.4, 0.4}, {0.9, 0.85}}, {{3.0, 0.2}, {2.4, 0.5}},
          };
      for (const auto& [a, b] : two_dim) {
        neighbor_pairs.push_back(
            {grid_vector(2, 8.0, 2, {{0, a[0]}, {1, a[1]}}),
             grid_vector(2, 8.0, 2, {{0, b[0]}, {1, b[1]}})});
      }
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RandomnessStream rng(991000 + seed);
      const alp::HashFunctionSeq hashes =
          alp::HashFunctionSeq::sample(cfg.d, cfg.s, params.m, rng);
      for (const auto& [x, x2] : neighbor_pairs) {
        const double budget =
            std::exp(cfg.epsilon * l1_distance(x, x2)) * (1.0 + 1e-9);
        const auto res = analysis::dp_ratio_oracle(x, x2, params, hashes);
        const double observed =
            std::max(res.max_ratio, 1.0 / res.min_ratio);
        worst_margin = std::max(worst_margin, observed / budget);
        violations += observed > budget;
        ++pairs;
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.check(pairs >= 50 * 5, "enumerated " + std::to_string(pairs) +
                               " (pair, seed) combinations");
  c.check(violations == 0, std::to_string(violations) +
                               " privacy violations; worst ratio/budget = " +
                               fmt(worst_margin));
  c.check(seconds < 60.0, "runtime " + fmt(seconds) + " s < 60 s");
}

// ----- criterion 5: random-walk closed form -------------------------------

void criterion_5(Criterion& c) {
  for (const double p : {0.1, 0.2, 0.3}) {
    const double closed = analysis::random_walk_last_nonneg_expectation(p);
    // Truncation residual is far below the 2% acceptance band.
    const double q = 1.0 - p;
    const double residual = std::pow(4.0 * p * q, 256.0) /
                            (std::sqrt(std::numbers::pi) * (q - p));
    if (residual >= 0.001 * closed) {
      c.check(false, "truncation too short at p = " + fmt(p));
      continue;
    }
    const double simulated = testing_support::simulate_last_nonneg_mean(
        p, 1000000, 512, 515000 + static_cast<std::uint64_t>(p * 100), 0);
    const double rel = std::abs(simulated - closed) / closed;
    c.check(rel <= 0.02, "p = " + fmt(p) + ": simulated " + fmt(simulated) +
                             " vs closed " + fmt(closed) + " (rel err " +
                             fmt(rel) + ")");
  }
}

// ----- criterion 6: series identity ---------------------------------------

void criterion_6(Criterion& c) {
  for (const double z : {0.05, 0.1, 0.2, 0.24}) {
    const double partial = analysis::binomial_series_partial_sum(z, 200);
    const double closed = analysis::binomial_series_closed_form(z);
    const double diff = std::abs(partial - closed);
    c.check(diff <= 1e-9,
            "z = " + fmt(z) + ": |partial200 - closed| = " + fmt(diff));
  }
}

// ----- criterion 7: sparse threshold vs naive oracle -----------------------

void criterion_7(Criterion& c) {
  const std::uint64_t d = 50;
  const SparseVector x(d, 20.0, 5,
                       {{3, 2.0}, {10, 6.5}, {20, 8.0}, {30, 12.0}, {40, 0.5}});
  const auto params = alp::ThresholdParams::pure_default(1.0, d);
  RandomnessStream fast_rng(70001);
  RandomnessStream naive_rng(70002);
  const int runs = 100000;
  std::vector<std::uint64_t> count_fast, count_naive;
  std::vector<double> values_fast, values_naive;
  count_fast.reserve(runs);
  count_naive.reserve(runs);
  for (int run = 0; run < runs; ++run) {
    const auto fast = threshold_pure(x, params, fast_rng);
    const auto naive =
        testing_support::threshold_pure_naive(x, params, naive_rng);
    count_fast.push_back(fast.size());
    count_naive.push_back(naive.size());
    for (const alp::Entry& e : fast.entries()) values_fast.push_back(e.value);
    for (const alp::Entry& e : naive.entries()) values_naive.push_back(e.value);
  }
  const double chi2_p = testing_support::chi2_two_sample_p(count_fast, count_naive);
  c.check(chi2_p > 0.01, "survivor-count chi-square p = " + fmt(chi2_p));
  const double ks_p = testing_support::ks_two_sample_p(values_fast, values_naive);
  c.check(ks_p > 0.01, "survivor-value KS p = " + fmt(ks_p));

  const std::uint64_t d_large = 1000;
  const auto zero = SparseVector::zero(d_large, 10.0, 5);
  const auto params_large = alp::ThresholdParams::pure_default(1.0, d_large);
  RandomnessStream rng(70003);
  double survivors = 0.0;
  for (int run = 0; run < runs; ++run) {
    survivors += static_cast<double>(threshold_pure(zero, params_large, rng).size());
  }
  const double mean_survivors = survivors / runs;
  c.check(in_range(mean_survivors, 1.0, 0.1),
          "mean surviving zeros = " + fmt(mean_survivors) + " vs 1 +- 0.1");
}

// ----- criterion 8: approximate release probability ------------------------

void criterion_8(Criterion& c) {
  const double delta = 0.01;
  const double x_value = 0.5;
  const SparseVector x(4, 1.0, 2, {{2, x_value}});
  const auto params = alp::ThresholdParams::approximate_default(1.0, delta);
  RandomnessStream rng(80001);
  const int runs = 1000000;
  std::uint64_t released = 0;
  bool sparsity_ok = true;
  for (int run = 0; run < runs; ++run) {
    const auto out = threshold_approx(x, params, rng);
    sparsity_ok &= out.size() <= x.sparsity();
    released += out.size();
  }
  const double expected = x_value * delta / (2.0 * std::exp(1.0));
  const double sigma = std::sqrt(expected * (1.0 - expected) / runs);
  const double observed = static_cast<double>(released) / runs;
  c.check(std::abs(observed - expected) <= 3.0 * sigma,
          "release rate " + fmt(observed) + " vs " + fmt(expected) + " +- 3σ (" +
              fmt(3.0 * sigma) + ")");
  c.check(sparsity_ok, "output sparsity <= k on every run");
}

// ----- criterion 9: tail dominance -----------------------------------------

void criterion_9(Criterion& c) {
  const std::uint32_t m = 512;
  const std::uint32_t y = 256;
  const std::uint64_t trials = 1000000;
  std::vector<double> deviations(trials);
  std::uint64_t cell_id = 0;
  for (const double alpha : {1.0, 3.0, 6.0}) {
    for (const double ratio : {0.0, 0.1, 0.2}) {
      const bench::WalkCell cell{alpha, ratio, m, y};
      simulate_walk_deviations(cell, RandomnessStream(90000 + cell_id++), 0,
                               deviations);
      for (const double tau : {5.0, 10.0, 20.0, 40.0}) {
        std::uint64_t exceed = 0;
        for (const double dev : deviations) exceed += dev >= tau;
        const double empirical = static_cast<double>(exceed) / trials;
        const double bound = analysis::tail_probability_bound(alpha, ratio, tau);
        if (empirical > bound) {
          c.check(false, "alpha " + fmt(alpha) + ", ratio " + fmt(ratio) +
                             ", tau " + fmt(tau) + ": " + fmt(empirical) +
                             " > bound " + fmt(bound));
        }
      }
    }
  }
  c.check(true, "9 cells x 4 tails checked at 1e6 trials each");
}

// ----- criterion 10: bound dominance over the full grid ---------------------

void criterion_10(Criterion& c) {
  bench::ExperimentConfig config;
  config.trials = 100000;
  config.seed = 100001;
  const auto records = bench::run_alp1_sweep(config);
  std::uint64_t violations = 0;
  std::vector<double> ratios;
  ratios.reserve(records.size());
  for (const auto& r : records) {
    violations += r.mean_abs_error > r.bound;
    ratios.push_back(r.mean_abs_error / r.bound);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  c.check(violations == 0,
          std::to_string(violations) + " dominance violations over " +
              std::to_string(records.size()) + " grid points");
  c.check(median >= 0.3 && median <= 0.7,
          "median observed/bound = " + fmt(median) + " in [0.3, 0.7]");
}

// ----- criterion 11: scaling properties -------------------------------------

void criterion_11(Criterion& c) {
  bench::ExperimentConfig config;
  config.dimension = 100000;
  config.bound = 10000.0;
  config.epsilon = 1.0;
  config.alpha = 3.0;
  config.trials = 40;
  config.seed = 110001;

  config.sparsity = 100;
  config.s = 0;  // 10k
  const auto at_k = bench::run_end2end(config);
  config.sparsity = 200;
  const auto at_2k = bench::run_end2end(config);
  const double ratio = at_2k.mean_serialized_bits / at_k.mean_serialized_bits;
  c.check(ratio >= 1.7 && ratio <= 2.3,
          "size(2k)/size(k) = " + fmt(ratio) + " in [1.7, 2.3]");

  config.sparsity = 100;
  const auto timed = bench::run_end2end(config, true);
  std::vector<double> ms, ns;
  for (const auto& point : timed.timing) {
    ms.push_back(static_cast<double>(point.m));
    ns.push_back(point.ns_per_estimate);
  }
  const double r2 = testing_support::r_squared(ms, ns);
  c.check(r2 >= 0.95, "estimator latency R^2 vs m = " + fmt(r2));

  bench::ExperimentConfig approx;
  approx.mode = alp::ThresholdMode::approximate;
  approx.delta = 1e-6;
  approx.bound = 100.0;
  approx.sparsity = 10;
  approx.trials = 2;
  approx.seed = 110002;
  approx.dimension = 1000;
  const auto small = bench::run_end2end(approx);
  approx.dimension = 1000000;
  const auto large = bench::run_end2end(approx);
  c.check(small.m == large.m, "approximate-mode m: " + std::to_string(small.m) +
                                  " at d=1e3 vs " + std::to_string(large.m) +
                                  " at d=1e6");
}

// ----- criterion 12: CLI determinism ----------------------------------------

std::string g_cli_path;

bool run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args;
  return std::system(cmd.c_str()) == 0;
}

bool files_equal(const std::string& a, const std::string& b) {
  return alp::io::read_file(a) == alp::io::read_file(b);
}

void criterion_12(Criterion& c) {
  if (g_cli_path.empty()) {
    c.check(false, "no --cli path given");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("acceptance_cli_tmp");
  fs::create_directories(dir);
  const std::string d = dir.string() + "/";

  bool ok = true;
  ok &= run_cli("sweep --alpha-grid 1,3 --collision-grid 0,0.1 --trials 2000 "
                "--seed 5 --threads 1 --out " + d + "sweep_a.csv");
  ok &= run_cli("sweep --alpha-grid 1,3 --collision-grid 0,0.1 --trials 2000 "
                "--seed 5 --threads 3 --out " + d + "sweep_b.csv");
  c.check(ok && files_equal(d + "sweep_a.csv", d + "sweep_b.csv"),
          "sweep outputs byte-identical across worker counts");

  ok = run_cli("histogram --alpha 3 --collision 0.1 --trials 5000 --seed 6 "
               "--threads 1 --out " + d + "hist_a.json");
  ok &= run_cli("histogram --alpha 3 --collision 0.1 --trials 5000 --seed 6 "
                "--threads 2 --out " + d + "hist_b.json");
  c.check(ok && files_equal(d + "hist_a.json", d + "hist_b.json"),
          "histogram outputs byte-identical");

  ok = run_cli("bounds --alpha-grid 0.5:2:0.5 --collision-grid 0,0.1 "
               "--tau 20 --psi 0.1 --format json --out " + d + "bounds_a.json");
  ok &= run_cli("bounds --alpha-grid 0.5:2:0.5 --collision-grid 0,0.1 "
                "--tau 20 --psi 0.1 --format json --out " + d + "bounds_b.json");
  c.check(ok && files_equal(d + "bounds_a.json", d + "bounds_b.json"),
          "bounds outputs byte-identical");

  ok = run_cli("end2end --d 10000 --u 5000 --k 20 --trials 5 --seed 7 "
               "--threads 1 --out " + d + "e2e_a.json");
  ok &= run_cli("end2end --d 10000 --u 5000 --k 20 --trials 5 --seed 7 "
                "--threads 4 --out " + d + "e2e_b.json");
  c.check(ok && files_equal(d + "e2e_a.json", d + "e2e_b.json"),
          "end2end outputs byte-identical");

  {
    std::ofstream vec(d + "vector.json");
    vec << R"({"d": 5000, "u": 300.0, "k": 8,)"
        << R"( "entries": [[3, 12.5], [100, 300.0], [4500, 0.75]]})";
  }
  ok = run_cli("project --in " + d + "vector.json --epsilon 1 --alpha 3 "
               "--seed 8 --out " + d + "rep_a.bin");
  ok &= run_cli("project --in " + d + "vector.json --epsilon 1 --alpha 3 "
                "--seed 8 --out " + d + "rep_b.bin");
  c.check(ok && files_equal(d + "rep_a.bin", d + "rep_b.bin"),
          "project outputs byte-identical");

  ok = run_cli("estimate --in " + d + "rep_a.bin --index 3 --index 100 "
               "--index 7 --out " + d + "est_a.json");
  ok &= run_cli("estimate --in " + d + "rep_a.bin --index 3 --index 100 "
                "--index 7 --out " + d + "est_b.json");
  c.check(ok && files_equal(d + "est_a.json", d + "est_b.json"),
          "estimate outputs byte-identical");

  std::error_code ec;
  fs::remove_all(dir, ec);
}

// ----- driver ---------------------------------------------------------------

struct Entry {
  int id;
  const char* name;
  void (*run)(Criterion&);
};

const Entry kCriteria[] = {
    {1, "fixed-point error experiment (collision 0.1)", criterion_1},
    {2, "low-collision error experiment (collision 0.01)", criterion_2},
    {3, "closed-form pins (quantile bound, 4pq)", criterion_3},
    {4, "exact privacy enumeration", criterion_4},
    {5, "random-walk closed form vs simulation", criterion_5},
    {6, "binomial series identity (partial sums k <= 200)", criterion_6},
    {7, "sparse threshold vs dense oracle", criterion_7},
    {8, "approximate-threshold release probability", criterion_8},
    {9, "tail-bound dominance", criterion_9},
    {10, "expected-error bound dominance over the sweep grid", criterion_10},
    {11, "size, latency, and access-time scaling", criterion_11},
    {12, "CLI determinism across runs and worker counts", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
  }

  int failures = 0;
  for (const Entry& entry : kCriteria) {
    if (only != 0 && entry.id != only) continue;
    Criterion c;
    try {
      entry.run(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    failures += !c.passed;
    std::printf("[%s] criterion %2d: %s — %s\n", c.passed ? "PASS" : "FAIL",
                entry.id, entry.name, c.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
