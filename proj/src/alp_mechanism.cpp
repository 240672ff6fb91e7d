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

#include "alp/alp_mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alp/kernels.hpp"

namespace alp {

namespace {

constexpr std::uint32_t kMaxColumns = 1u << 28;

std::uint32_t column_count(double alpha, double beta, double epsilon) {
  const double ratio = beta * epsilon / alpha;
  // Snap near-integer ratios before taking the ceiling so that exact
  // multiples of alpha do not gain a column to floating-point error.
  const double snapped = std::round(ratio);
  double m = std::abs(ratio - snapped) <= 1e-9 * std::max(1.0, std::abs(ratio))
                 ? snapped
                 : std::ceil(ratio);
  if (m < 1.0) m = 1.0;
  if (!(m <= static_cast<double>(kMaxColumns))) {
    throw std::invalid_argument("beta * epsilon / alpha yields too many columns");
  }
  return static_cast<std::uint32_t>(m);
}

// Rounds, caps at m, and writes the unary bits of every entry of the
// epsilon-scaled input.
void write_unary_bits(const SparseVector& x, const AlpParams& params,
                      const HashFunctionSeq& hashes, RandomnessStream& rng,
                      NoiseMode mode, BitMatrix& bits) {
  for (const Entry& e : x.entries()) {
    const double scaled = e.value * params.epsilon / params.alpha;
    std::uint64_t y = mode == NoiseMode::noiseless ? round_nearest(scaled)
                                                   : random_round(scaled, rng);
    y = std::min<std::uint64_t>(y, params.m);
    for (std::uint32_t b = 0; b < y; ++b) {
      bits.set(hashes.eval_unchecked(b, e.index), b);
    }
  }
}

void flip_bits(const AlpParams& params, RandomnessStream& rng, BitMatrix& bits) {
  const std::uint64_t threshold = bernoulli_threshold(params.flip_probability());
  std::vector<std::uint64_t> mask(bits.words_per_column());
  for (std::uint32_t col = 0; col < params.m; ++col) {
    const DrawRange draws = rng.reserve(params.s);
    kernels::fill_bernoulli(mask.data(), params.s, threshold, draws.key,
                            draws.first);
    bits.xor_column(col, mask.data());
  }
}

void check_projection_inputs(const SparseVector& x, const AlpParams& params,
                             const HashFunctionSeq& hashes) {
  if (params.s <= 2 * static_cast<std::uint64_t>(x.sparsity())) {
    throw std::invalid_argument("hash range must satisfy s > 2k");
  }
  if (hashes.range() != params.s || hashes.size() != params.m ||
      hashes.domain() != x.dimension()) {
    throw std::invalid_argument("hash sequence shape does not match the parameters");
  }
}

double finish_estimate(const Embedding& embedding,
                       const kernels::WalkResult& walk) {
  const AlpParams& p = embedding.params();
  const double y = static_cast<double>(walk.index_sum) /
                   static_cast<double>(walk.count);
  return std::clamp(y * p.alpha / p.epsilon, 0.0, embedding.bound());
}

}  // namespace

AlpParams AlpParams::create(double alpha, double beta, std::uint32_t s,
                            double epsilon) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (s == 0) throw std::invalid_argument("hash range must be positive");
  return AlpParams{alpha, beta, epsilon, s, column_count(alpha, beta, epsilon)};
}

Embedding::Embedding(AlpParams params, std::uint64_t dimension, double bound,
                     std::uint32_t sparsity, HashFunctionSeq hashes,
                     BitMatrix bits)
    : params_(params),
      dimension_(dimension),
      bound_(bound),
      sparsity_(sparsity),
      hashes_(std::move(hashes)),
      bits_(std::move(bits)) {
  if (bits_.rows() != params_.s || bits_.cols() != params_.m) {
    throw std::invalid_argument("bit matrix shape does not match the parameters");
  }
  if (hashes_.range() != params_.s || hashes_.size() != params_.m) {
    throw std::invalid_argument("hash sequence shape does not match the parameters");
  }
  if (hashes_.domain() != dimension_) {
    throw std::invalid_argument("hash domain does not match the dimension");
  }
}

Embedding alp_project(const SparseVector& x, const AlpParams& params,
                      const HashFunctionSeq& hashes, RandomnessStream& rng,
                      NoiseMode mode) {
  check_projection_inputs(x, params, hashes);
  BitMatrix bits(params.s, params.m);
  write_unary_bits(x, params, hashes, rng, mode, bits);
  if (mode == NoiseMode::standard) {
    flip_bits(params, rng, bits);
  }
  return Embedding(params, x.dimension(), x.bound(), x.sparsity(), hashes,
                   std::move(bits));
}

Embedding alp1_project(const SparseVector& x, const AlpParams& params,
                       const HashFunctionSeq& hashes, RandomnessStream& rng,
                       NoiseMode mode) {
  if (params.epsilon != 1.0) {
    throw std::invalid_argument("alp1_project requires epsilon = 1");
  }
  return alp_project(x, params, hashes, rng, mode);
}

double alp_estimate(const Embedding& embedding, std::uint64_t i) {
  if (i >= embedding.dimension()) {
    throw std::out_of_range("index outside the dimension");
  }
  const AlpParams& p = embedding.params();
  const HashFunctionSeq& h = embedding.hashes();
  const BitMatrix& bits = embedding.bits();
  thread_local std::vector<std::uint64_t> read_bits;
  read_bits.assign(kernels::words_for_bits(p.m), 0);
  for (std::uint32_t b = 0; b < p.m; ++b) {
    if (bits.get(h.eval_unchecked(b, i), b)) {
      read_bits[b >> 6] |= 1ULL << (b & 63);
    }
  }
  const kernels::WalkResult walk =
      kernels::prefix_walk_argmax(read_bits.data(), p.m);
  return finish_estimate(embedding, walk);
}

double alp1_estimate(const Embedding& embedding, std::uint64_t i) {
  if (embedding.params().epsilon != 1.0) {
    throw std::invalid_argument("alp1_estimate requires an epsilon = 1 embedding");
  }
  return alp_estimate(embedding, i);
}

std::pair<double, EstimationTrace> alp_estimate_with_trace(
    const Embedding& embedding, std::uint64_t i) {
  if (i >= embedding.dimension()) {
    throw std::out_of_range("index outside the dimension");
  }
  const AlpParams& p = embedding.params();
  EstimationTrace trace;
  trace.prefix.reserve(p.m + 1);
  trace.prefix.push_back(0);
  std::int64_t acc = 0;
  std::int64_t best = 0;
  for (std::uint32_t b = 0; b < p.m; ++b) {
    const bool bit = embedding.bits().get(
        embedding.hashes().eval_unchecked(b, i), b);
    acc += bit ? 1 : -1;
    trace.prefix.push_back(acc);
    best = std::max(best, acc);
  }
  trace.argmax_index_sum = 0;
  trace.argmax_count = 0;
  for (std::uint32_t n = 0; n <= p.m; ++n) {
    if (trace.prefix[n] == best) {
      trace.argmax.push_back(n);
      trace.argmax_index_sum += n;
      ++trace.argmax_count;
    }
  }
  trace.y_estimate = static_cast<double>(trace.argmax_index_sum) /
                     static_cast<double>(trace.argmax_count);
  const kernels::WalkResult walk{best, trace.argmax_index_sum,
                                 trace.argmax_count};
  return {finish_estimate(embedding, walk), std::move(trace)};
}

std::pair<double, EstimationTrace> alp1_estimate_with_trace(
    const Embedding& embedding, std::uint64_t i) {
  if (embedding.params().epsilon != 1.0) {
    throw std::invalid_argument("alp1_estimate requires an epsilon = 1 embedding");
  }
  return alp_estimate_with_trace(embedding, i);
}

}  // namespace alp
