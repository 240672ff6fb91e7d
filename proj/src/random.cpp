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

#include "alp/random.hpp"

#include <cmath>
#include <stdexcept>

namespace alp {

std::uint64_t bernoulli_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli probability must lie in [0, 1]");
  }
  if (p <= 0.0) return 0;
  if (p >= 1.0) return 1ULL << 53;
  return static_cast<std::uint64_t>(std::ceil(p * 0x1.0p53));
}

std::uint64_t RandomnessStream::uniform_below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_below requires n > 0");
  }
  // Lemire's multiply-reject method.
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomnessStream::laplace(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("laplace scale must be positive");
  }
  const double u = next_unit_open();
  if (u < 0.5) {
    return scale * std::log(2.0 * u);
  }
  return -scale * std::log(2.0 * (1.0 - u));
}

double RandomnessStream::exponential(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("exponential mean must be positive");
  }
  return -mean * std::log(next_unit_open());
}

std::uint64_t RandomnessStream::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial probability must lie in [0, 1]");
  }
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double log_q = std::log1p(-p);
  std::uint64_t count = 0;
  double position = 0.0;
  while (true) {
    const double skip = std::floor(std::log(next_unit_open()) / log_q);
    position += skip + 1.0;
    if (position > static_cast<double>(n)) break;
    ++count;
  }
  return count;
}

std::uint64_t random_round(double r, RandomnessStream& rng) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::invalid_argument("random_round requires a finite non-negative value");
  }
  const double base = std::floor(r);
  const double frac = r - base;
  auto result = static_cast<std::uint64_t>(base);
  if (frac > 0.0 && rng.bernoulli(frac)) {
    ++result;
  }
  return result;
}

std::uint64_t round_nearest(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::invalid_argument("round_nearest requires a finite non-negative value");
  }
  return static_cast<std::uint64_t>(std::floor(r + 0.5));
}

bool randomized_response(bool b, double p, RandomnessStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("randomized_response probability must lie in [0, 1]");
  }
  return rng.bernoulli(p) ? !b : b;
}

}  // namespace alp
