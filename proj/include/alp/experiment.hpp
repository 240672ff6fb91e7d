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
// Simulation harness: parameter sweeps over the estimator error under a
// worst-case hash-collision model, error histograms, closed-form bound
// tables, and end-to-end measurements of the combined structure. Results
// are deterministic in (config, seed) for any worker count.

#ifndef ALP_EXPERIMENT_HPP_
#define ALP_EXPERIMENT_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "alp/random.hpp"
#include "alp/threshold.hpp"

namespace alp::bench {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  double beta = 5000.0;
  std::vector<double> alpha_grid;      // empty -> default_alpha_grid()
  std::vector<double> collision_grid;  // empty -> default_collision_grid()
  double alpha = 3.0;
  double collision = 0.1;
  double epsilon = 1.0;
  double delta = 0.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 -> hardware concurrency
  bool noiseless = false;
  // Combined-structure shape (end2end).
  std::uint64_t dimension = 100000;
  double bound = 10000.0;
  std::uint32_t sparsity = 100;
  std::uint32_t s = 0;  // 0 -> 10 * sparsity
  ThresholdMode mode = ThresholdMode::pure;
  // Optional extra bound tabulations.
  double tau = 0.0;  // > 0 -> include tail-probability bounds
  double psi = 0.0;  // in (0,1) -> include error-quantile bounds
};

// alpha in steps of 0.1 over [0.1, 10]; collision probability in steps of
// 0.05 over [0, 0.2].
std::vector<double> default_alpha_grid();
std::vector<double> default_collision_grid();

// One estimation per trial under the worst-case collision model: the true
// value is uniform on [0, beta], each bit past the rounded value reads as
// set with the configured collision probability, randomized response is
// applied on top, and the walk estimator runs over the m read bits.
struct SimCell {
  double alpha;
  double collision;
  double beta;
  bool noiseless = false;
};

// Fills errors[t] = estimate - true value for trials t in [0, size).
void simulate_alp1_errors(const SimCell& cell, RandomnessStream base,
                          unsigned threads, std::span<double> errors);

// Fixed-value variant: the stored unary value is `y` out of m columns and
// deviations[t] = |y - y~| in unary units.
struct WalkCell {
  double alpha;
  double collision;
  std::uint32_t m;
  std::uint32_t y;
};
void simulate_walk_deviations(const WalkCell& cell, RandomnessStream base,
                              unsigned threads, std::span<double> deviations);

struct SummaryStats {
  double mean;
  double mean_abs;
  double std_dev;
  double p50_abs;
  double p90_abs;
  double p99_abs;
  double min;
  double max;
};
SummaryStats summarize_errors(std::span<const double> errors);

struct SweepRecord {
  double alpha;
  double collision;
  double mean_abs_error;
  double mean_error;
  double std_dev;
  double p50;
  double p90;
  double p99;
  double bound;
  std::uint64_t trials;
};
std::vector<SweepRecord> run_alp1_sweep(const ExperimentConfig& config);

struct HistogramReport {
  double alpha;
  double collision;
  double beta;
  std::uint64_t trials;
  std::uint64_t seed;
  bool noiseless;
  SummaryStats stats;
  double bin_width;
  double bin_lo;
  std::vector<std::uint64_t> counts;
  std::vector<double> overlay_scales;  // Laplace densities tabulated below
  std::vector<std::vector<double>> overlay_densities;
};
HistogramReport run_histogram(const ExperimentConfig& config);

struct BoundRecord {
  double alpha;
  double collision;
  double expected_error;
  double tail_probability;  // negative when not tabulated
  double error_quantile;    // negative when not tabulated
};
struct BoundsTable {
  double tau;
  double psi;
  double epsilon;
  std::vector<BoundRecord> records;
};
BoundsTable run_bounds(const ExperimentConfig& config);

struct ProbeError {
  double x_value;
  double mean_abs_error;
};
struct TimingPoint {
  std::uint32_t m;
  double ns_per_estimate;
};
struct End2EndReport {
  ThresholdMode mode;
  std::uint64_t dimension;
  double bound;
  std::uint32_t sparsity;
  std::uint32_t s;
  double alpha;
  double epsilon1;
  double epsilon2;
  double delta;
  std::uint64_t trials;
  std::uint64_t seed;
  double threshold;
  std::uint32_t m;
  double mean_serialized_bits;
  std::vector<ProbeError> probes;
  std::vector<TimingPoint> timing;  // filled only when timing is measured
};
End2EndReport run_end2end(const ExperimentConfig& config,
                          bool measure_time = false);

// Deterministic writers; every file embeds the config, seed, and library
// version. CSV is available for the tabular outputs, JSON for everything.
void write_sweep_csv(std::ostream& out, const ExperimentConfig& config,
                     std::span<const SweepRecord> records);
void write_sweep_json(std::ostream& out, const ExperimentConfig& config,
                      std::span<const SweepRecord> records);
void write_histogram_json(std::ostream& out, const HistogramReport& report);
void write_bounds_csv(std::ostream& out, const ExperimentConfig& config,
                      const BoundsTable& table);
void write_bounds_json(std::ostream& out, const ExperimentConfig& config,
                       const BoundsTable& table);
void write_end2end_json(std::ostream& out, const End2EndReport& report);

}  // namespace alp::bench

#endif  // ALP_EXPERIMENT_HPP_
