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

#include "alp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "alp/alp_mechanism.hpp"
#include "alp/analysis.hpp"
#include "alp/combined.hpp"
#include "alp/kernels.hpp"
#include "alp/parallel.hpp"
#include "alp/serialization.hpp"
#include "alp/version.hpp"

namespace alp::bench {

namespace {

constexpr std::uint64_t kChunk = 1024;

std::uint32_t simulated_columns(double alpha, double beta) {
  return AlpParams::create(alpha, beta, 1, 1.0).m;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<double> default_collision_grid() {
  return {0.0, 0.05, 0.10, 0.15, 0.20};
}

void simulate_alp1_errors(const SimCell& cell, RandomnessStream base,
                          unsigned threads, std::span<double> errors) {
  if (!(cell.collision >= 0.0 && cell.collision <= 1.0)) {
    throw std::invalid_argument("collision probability must lie in [0, 1]");
  }
  const std::uint32_t m = simulated_columns(cell.alpha, cell.beta);
  const double p = cell.noiseless ? 0.0 : 1.0 / (cell.alpha + 2.0);
  const double q = 1.0 - p;
  // Bits covered by the stored value read 1 unless flipped; bits past it
  // read 1 when a simulated collision lands there or the flip fires.
  const std::uint64_t thr_low = bernoulli_threshold(q);
  const std::uint64_t thr_high =
      bernoulli_threshold(cell.collision * q + (1.0 - cell.collision) * p);

  parallel_for_chunks(
      errors.size(), kChunk, threads,
      [&](std::uint64_t begin, std::uint64_t end) {
        thread_local std::vector<std::uint64_t> words;
        words.resize(kernels::words_for_bits(m));
        for (std::uint64_t t = begin; t < end; ++t) {
          RandomnessStream rs = base.substream(t);
          const double x = rs.next_unit() * cell.beta;
          std::uint64_t y = cell.noiseless
                                ? round_nearest(x / cell.alpha)
                                : random_round(x / cell.alpha, rs);
          y = std::min<std::uint64_t>(y, m);
          const DrawRange draws = rs.reserve(m);
          kernels::fill_bernoulli_split(words.data(), m, y, thr_low, thr_high,
                                        draws.key, draws.first);
          const kernels::WalkResult walk =
              kernels::prefix_walk_argmax(words.data(), m);
          const double estimate = static_cast<double>(walk.index_sum) /
                                  static_cast<double>(walk.count) * cell.alpha;
          errors[t] = estimate - x;
        }
      });
}

void simulate_walk_deviations(const WalkCell& cell, RandomnessStream base,
                              unsigned threads, std::span<double> deviations) {
  if (cell.y > cell.m) {
    throw std::invalid_argument("stored value exceeds the column count");
  }
  const double p = 1.0 / (cell.alpha + 2.0);
  const double q = 1.0 - p;
  const std::uint64_t thr_low = bernoulli_threshold(q);
  const std::uint64_t thr_high =
      bernoulli_threshold(cell.collision * q + (1.0 - cell.collision) * p);

  parallel_for_chunks(
      deviations.size(), kChunk, threads,
      [&](std::uint64_t begin, std::uint64_t end) {
        thread_local std::vector<std::uint64_t> words;
        words.resize(kernels::words_for_bits(cell.m));
        for (std::uint64_t t = begin; t < end; ++t) {
          RandomnessStream rs = base.substream(t);
          const DrawRange draws = rs.reserve(cell.m);
          kernels::fill_bernoulli_split(words.data(), cell.m, cell.y, thr_low,
                                        thr_high, draws.key, draws.first);
          const kernels::WalkResult walk =
              kernels::prefix_walk_argmax(words.data(), cell.m);
          const double estimate = static_cast<double>(walk.index_sum) /
                                  static_cast<double>(walk.count);
          deviations[t] = std::abs(estimate - static_cast<double>(cell.y));
        }
      });
}

SummaryStats summarize_errors(std::span<const double> errors) {
  SummaryStats stats{};
  if (errors.empty()) return stats;
  double sum = 0.0;
  double sum_abs = 0.0;
  stats.min = errors[0];
  stats.max = errors[0];
  for (const double e : errors) {
    sum += e;
    sum_abs += std::abs(e);
    stats.min = std::min(stats.min, e);
    stats.max = std::max(stats.max, e);
  }
  const double n = static_cast<double>(errors.size());
  stats.mean = sum / n;
  stats.mean_abs = sum_abs / n;
  double ss = 0.0;
  for (const double e : errors) {
    const double d = e - stats.mean;
    ss += d * d;
  }
  stats.std_dev = std::sqrt(ss / n);
  std::vector<double> abs_sorted(errors.begin(), errors.end());
  for (double& v : abs_sorted) v = std::abs(v);
  std::sort(abs_sorted.begin(), abs_sorted.end());
  stats.p50_abs = quantile_sorted(abs_sorted, 0.50);
  stats.p90_abs = quantile_sorted(abs_sorted, 0.90);
  stats.p99_abs = quantile_sorted(abs_sorted, 0.99);
  return stats;
}

std::vector<SweepRecord> run_alp1_sweep(const ExperimentConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  const std::vector<double> alphas =
      config.alpha_grid.empty() ? default_alpha_grid() : config.alpha_grid;
  const std::vector<double> collisions = config.collision_grid.empty()
                                             ? default_collision_grid()
                                             : config.collision_grid;
  RandomnessStream root(config.seed);
  std::vector<SweepRecord> records;
  records.reserve(alphas.size() * collisions.size());
  std::vector<double> errors(config.trials);
  for (std::size_t ci = 0; ci < collisions.size(); ++ci) {
    RandomnessStream row = root.substream(ci);
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      const SimCell cell{alphas[ai], collisions[ci], config.beta,
                         config.noiseless};
      simulate_alp1_errors(cell, row.substream(ai), config.threads, errors);
      const SummaryStats stats = summarize_errors(errors);
      records.push_back({alphas[ai], collisions[ci], stats.mean_abs,
                         stats.mean, stats.std_dev, stats.p50_abs,
                         stats.p90_abs, stats.p99_abs,
                         analysis::expected_error_bound(alphas[ai], collisions[ci]),
                         config.trials});
    }
  }
  return records;
}

HistogramReport run_histogram(const ExperimentConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  HistogramReport report{};
  report.alpha = config.alpha;
  report.collision = config.collision;
  report.beta = config.beta;
  report.trials = config.trials;
  report.seed = config.seed;
  report.noiseless = config.noiseless;

  std::vector<double> errors(config.trials);
  const SimCell cell{config.alpha, config.collision, config.beta,
                     config.noiseless};
  simulate_alp1_errors(cell, RandomnessStream(config.seed), config.threads,
                       errors);
  report.stats = summarize_errors(errors);

  const double range = report.stats.max - report.stats.min;
  report.bin_width = range >= 20.0 ? 1.0 : (range > 0.0 ? range / 40.0 : 1.0);
  report.bin_lo = std::floor(report.stats.min / report.bin_width) *
                  report.bin_width;
  const auto bins = static_cast<std::size_t>(
      std::floor((report.stats.max - report.bin_lo) / report.bin_width) + 1);
  report.counts.assign(bins, 0);
  for (const double e : errors) {
    auto b = static_cast<std::size_t>((e - report.bin_lo) / report.bin_width);
    if (b >= bins) b = bins - 1;
    ++report.counts[b];
  }

  report.overlay_scales = {1.0, 4.5};
  for (const double scale : report.overlay_scales) {
    std::vector<double> density(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      const double center = report.bin_lo + (b + 0.5) * report.bin_width;
      density[b] = std::exp(-std::abs(center) / scale) / (2.0 * scale);
    }
    report.overlay_densities.push_back(std::move(density));
  }
  return report;
}

BoundsTable run_bounds(const ExperimentConfig& config) {
  const std::vector<double> alphas =
      config.alpha_grid.empty() ? default_alpha_grid() : config.alpha_grid;
  const std::vector<double> collisions = config.collision_grid.empty()
                                             ? default_collision_grid()
                                             : config.collision_grid;
  BoundsTable table{config.tau, config.psi, config.epsilon, {}};
  for (const double c : collisions) {
    for (const double a : alphas) {
      BoundRecord record{a, c, analysis::expected_error_bound(a, c), -1.0,
                         -1.0};
      if (config.tau > 0.0) {
        record.tail_probability = analysis::tail_probability_bound(a, c,
                                                                   config.tau);
      }
      if (config.psi > 0.0 && config.psi < 1.0) {
        record.error_quantile = analysis::error_quantile_bound(
            a, c, config.psi, config.epsilon);
      }
      table.records.push_back(record);
    }
  }
  return table;
}

namespace {

SparseVector end2end_input(const ExperimentConfig& config, double t) {
  const std::uint64_t d = config.dimension;
  const double u = config.bound;
  const std::uint32_t k = config.sparsity;
  if (k < 4) throw std::invalid_argument("end2end requires sparsity >= 4");
  if (d < k + 5ULL) throw std::invalid_argument("end2end requires d > k + 4");
  std::vector<Entry> entries;
  entries.push_back({1, std::min(t / 2.0, u)});
  entries.push_back({2, std::min(t, u)});
  entries.push_back({3, std::min(2.0 * t, u)});
  entries.push_back({4, u});
  RandomnessStream filler(config.seed, 0x66696C6C);  // shape stream
  for (std::uint32_t j = 4; j < k; ++j) {
    entries.push_back({5 + j, u * filler.next_unit_open()});
  }
  return SparseVector(d, u, k, std::move(entries));
}

std::vector<TimingPoint> measure_estimator_latency(std::uint64_t seed) {
  const std::vector<std::uint32_t> m_grid = {1024, 2048, 4096,
                                             8192, 16384, 32768};
  const std::uint64_t d = 65536;
  const std::uint32_t s = 512;
  RandomnessStream rng(seed, 0x74696D65);
  SparseVector x(d, 1e7, 8,
                 {{7, 5000.0}, {100, 200.0}, {9000, 1e6}, {40000, 123.0}});
  std::vector<TimingPoint> points;
  for (const std::uint32_t m : m_grid) {
    const AlpParams params =
        AlpParams::create(3.0, 3.0 * static_cast<double>(m), s, 1.0);
    HashFunctionSeq hashes = HashFunctionSeq::sample(d, s, params.m, rng);
    const Embedding embedding = alp_project(x, params, hashes, rng);
    const std::uint64_t reps =
        std::clamp<std::uint64_t>(50000000ULL / m, 500, 50000);
    volatile double sink = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t r = 0; r < reps; ++r) {
      sink = sink + alp_estimate(embedding, (r * 2654435761ULL) % d);
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ns =
        static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                stop - start)
                                .count());
    points.push_back({params.m, ns / static_cast<double>(reps)});
  }
  return points;
}

}  // namespace

End2EndReport run_end2end(const ExperimentConfig& config, bool measure_time) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  const std::uint32_t s =
      config.s != 0 ? config.s : 10 * config.sparsity;
  CombinedConfig combined{config.mode, BudgetSplit::even(config.epsilon),
                          config.delta, config.alpha, s};
  const double t =
      config.mode == ThresholdMode::pure
          ? std::log(static_cast<double>(config.dimension) / 2.0) /
                combined.split.epsilon1
          : std::log(1.0 / config.delta) / combined.split.epsilon2 + 2.0;

  const SparseVector x = end2end_input(config, t);
  const std::vector<std::uint64_t> probe_indices = {0, 1, 2, 3, 4};

  End2EndReport report{};
  report.mode = config.mode;
  report.dimension = config.dimension;
  report.bound = config.bound;
  report.sparsity = config.sparsity;
  report.s = s;
  report.alpha = config.alpha;
  report.epsilon1 = combined.split.epsilon1;
  report.epsilon2 = combined.split.epsilon2;
  report.delta = config.delta;
  report.trials = config.trials;
  report.seed = config.seed;
  report.threshold = t;

  std::vector<double> err_sums(probe_indices.size(), 0.0);
  double bit_sum = 0.0;
  RandomnessStream root(config.seed);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    RandomnessStream rng = root.substream(trial);
    const CombinedRepresentation rep = combined_project(x, combined, rng);
    report.m = rep.embedding().params().m;
    bit_sum += static_cast<double>(io::serialize(rep).size()) * 8.0;
    for (std::size_t j = 0; j < probe_indices.size(); ++j) {
      const double truth = x.value_at(probe_indices[j]);
      err_sums[j] += std::abs(truth - combined_estimate(rep, probe_indices[j]));
    }
  }
  const double n = static_cast<double>(config.trials);
  report.mean_serialized_bits = bit_sum / n;
  for (std::size_t j = 0; j < probe_indices.size(); ++j) {
    report.probes.push_back(
        {x.value_at(probe_indices[j]), err_sums[j] / n});
  }
  if (measure_time) {
    report.timing = measure_estimator_latency(config.seed);
  }
  return report;
}

namespace {

nlohmann::json config_json(const ExperimentConfig& config) {
  // Worker count deliberately omitted: outputs are thread-count invariant.
  return nlohmann::json{{"version", kVersion},
                        {"seed", config.seed},
                        {"trials", config.trials},
                        {"beta", config.beta},
                        {"noiseless", config.noiseless}};
}

void write_provenance_csv(std::ostream& out, const ExperimentConfig& config) {
  out << "# alp " << kVersion << "\n";
  out << "# seed=" << config.seed << " trials=" << config.trials
      << " beta=" << format_double(config.beta)
      << " noiseless=" << (config.noiseless ? 1 : 0) << "\n";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const ExperimentConfig& config,
                     std::span<const SweepRecord> records) {
  write_provenance_csv(out, config);
  out << "alpha,collision,mean_abs_error,mean_error,std_dev,p50,p90,p99,"
         "bound,trials\n";
  for (const SweepRecord& r : records) {
    out << format_double(r.alpha) << ',' << format_double(r.collision) << ','
        << format_double(r.mean_abs_error) << ',' << format_double(r.mean_error)
        << ',' << format_double(r.std_dev) << ',' << format_double(r.p50) << ','
        << format_double(r.p90) << ',' << format_double(r.p99) << ','
        << format_double(r.bound) << ',' << r.trials << "\n";
  }
}

void write_sweep_json(std::ostream& out, const ExperimentConfig& config,
                      std::span<const SweepRecord> records) {
  nlohmann::json doc = config_json(config);
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRecord& r : records) {
    rows.push_back({{"alpha", r.alpha},
                    {"collision", r.collision},
                    {"mean_abs_error", r.mean_abs_error},
                    {"mean_error", r.mean_error},
                    {"std_dev", r.std_dev},
                    {"p50", r.p50},
                    {"p90", r.p90},
                    {"p99", r.p99},
                    {"bound", r.bound},
                    {"trials", r.trials}});
  }
  doc["records"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void write_histogram_json(std::ostream& out, const HistogramReport& report) {
  nlohmann::json doc{
      {"version", kVersion},
      {"alpha", report.alpha},
      {"collision", report.collision},
      {"beta", report.beta},
      {"trials", report.trials},
      {"seed", report.seed},
      {"noiseless", report.noiseless},
      {"stats",
       {{"mean_error", report.stats.mean},
        {"mean_abs_error", report.stats.mean_abs},
        {"std_dev", report.stats.std_dev},
        {"p50_abs", report.stats.p50_abs},
        {"p90_abs", report.stats.p90_abs},
        {"p99_abs", report.stats.p99_abs},
        {"min", report.stats.min},
        {"max", report.stats.max}}},
      {"bin_width", report.bin_width},
      {"bin_lo", report.bin_lo},
      {"counts", report.counts}};
  nlohmann::json overlays = nlohmann::json::array();
  for (std::size_t i = 0; i < report.overlay_scales.size(); ++i) {
    overlays.push_back({{"scale", report.overlay_scales[i]},
                        {"density", report.overlay_densities[i]}});
  }
  doc["overlays"] = std::move(overlays);
  out << doc.dump(2) << "\n";
}

void write_bounds_csv(std::ostream& out, const ExperimentConfig& config,
                      const BoundsTable& table) {
  write_provenance_csv(out, config);
  out << "alpha,collision,expected_error,tail_probability,error_quantile\n";
  for (const BoundRecord& r : table.records) {
    out << format_double(r.alpha) << ',' << format_double(r.collision) << ','
        << format_double(r.expected_error) << ','
        << format_double(r.tail_probability) << ','
        << format_double(r.error_quantile) << "\n";
  }
}

void write_bounds_json(std::ostream& out, const ExperimentConfig& config,
                       const BoundsTable& table) {
  nlohmann::json doc = config_json(config);
  doc["tau"] = table.tau;
  doc["psi"] = table.psi;
  doc["epsilon"] = table.epsilon;
  nlohmann::json rows = nlohmann::json::array();
  for (const BoundRecord& r : table.records) {
    nlohmann::json row{{"inputs", {{"alpha", r.alpha}, {"collision", r.collision}}},
                       {"bound", r.expected_error},
                       {"formula_id", "expected_error"}};
    rows.push_back(row);
    if (r.tail_probability >= 0.0) {
      rows.push_back({{"inputs",
                       {{"alpha", r.alpha},
                        {"collision", r.collision},
                        {"tau", table.tau}}},
                      {"bound", r.tail_probability},
                      {"formula_id", "tail_probability"}});
    }
    if (r.error_quantile >= 0.0) {
      rows.push_back({{"inputs",
                       {{"alpha", r.alpha},
                        {"collision", r.collision},
                        {"psi", table.psi},
                        {"epsilon", table.epsilon}}},
                      {"bound", r.error_quantile},
                      {"formula_id", "error_quantile"}});
    }
  }
  doc["records"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void write_end2end_json(std::ostream& out, const End2EndReport& report) {
  nlohmann::json doc{
      {"version", kVersion},
      {"mode", report.mode == ThresholdMode::pure ? "pure" : "approx"},
      {"dimension", report.dimension},
      {"bound", report.bound},
      {"sparsity", report.sparsity},
      {"s", report.s},
      {"alpha", report.alpha},
      {"epsilon1", report.epsilon1},
      {"epsilon2", report.epsilon2},
      {"delta", report.delta},
      {"trials", report.trials},
      {"seed", report.seed},
      {"threshold", report.threshold},
      {"m", report.m},
      {"mean_serialized_bits", report.mean_serialized_bits}};
  nlohmann::json probes = nlohmann::json::array();
  for (const ProbeError& p : report.probes) {
    probes.push_back({{"x", p.x_value}, {"mean_abs_error", p.mean_abs_error}});
  }
  doc["probes"] = std::move(probes);
  nlohmann::json timing = nlohmann::json::array();
  for (const TimingPoint& t : report.timing) {
    timing.push_back({{"m", t.m}, {"ns_per_estimate", t.ns_per_estimate}});
  }
  doc["timing"] = std::move(timing);
  out << doc.dump(2) << "\n";
}

}  // namespace alp::bench
