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

#ifndef ALP_RANDOM_HPP_
#define ALP_RANDOM_HPP_

#include <cstdint>
#include <limits>

namespace alp {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draw j of a reserved block is mix64(key + (first + j) * kGoldenGamma).
// Shared with the packed-bit kernels so that bulk fills reproduce exactly
// the draws a stream would have made one at a time.
struct DrawRange {
  std::uint64_t key;
  std::uint64_t first;

  std::uint64_t draw(std::uint64_t j) const {
    return mix64(key + (first + j) * kGoldenGamma);
  }
};

// Maps p in [0, 1] to the integer threshold used for Bernoulli draws:
// the event fires iff (word >> 11) < threshold. p = 1 always fires,
// p = 0 never does.
std::uint64_t bernoulli_threshold(double p);

// Counter-based random stream: a draw is a pure function of
// (key, counter), so blocks of draws can be reserved up front and filled
// out of order or in parallel without changing the result. Streams with
// the same (seed, stream_index) are identical; distinct indices give
// statistically independent streams. Single-owner: not thread safe.
class RandomnessStream {
 public:
  explicit RandomnessStream(std::uint64_t seed, std::uint64_t stream_index = 0)
      : key_(derive_key(seed, stream_index)) {}

  static RandomnessStream from_key(std::uint64_t key) {
    RandomnessStream s(0, 0);
    s.key_ = key;
    s.counter_ = 0;
    return s;
  }

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_index) {
    return mix64(mix64(seed + kGoldenGamma) ^ mix64(stream_index ^ 0x6A09E667F3BCC909ULL));
  }

  // Child stream fully determined by (key, index).
  RandomnessStream substream(std::uint64_t index) const {
    return RandomnessStream(key_, index);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGoldenGamma); }

  // Reserves n draws and returns their addresses; the stream skips past
  // them. Used to hand a block of randomness to a kernel.
  DrawRange reserve(std::uint64_t n) {
    DrawRange r{key_, counter_ + 1};
    counter_ += n;
    return r;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); never returns an endpoint, safe under log().
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    return (next_u64() >> 11) < bernoulli_threshold(p);
  }

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);

  // Laplace(0, scale) via the inverse CDF. scale must be positive.
  double laplace(double scale);

  // Exponential with the given mean.
  double exponential(double mean);

  // Binomial(n, p) by geometric skipping; expected cost O(np + 1).
  std::uint64_t binomial(std::uint64_t n, double p);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Unbiased stochastic rounding: ceil(r) with probability r - floor(r),
// floor(r) otherwise. r must be finite and non-negative.
std::uint64_t random_round(double r, RandomnessStream& rng);

// Deterministic companion used by the noiseless test mode: rounds half
// away from zero.
std::uint64_t round_nearest(double r);

// Flips b with probability p. p must lie in [0, 1].
bool randomized_response(bool b, double p, RandomnessStream& rng);

}  // namespace alp

#endif  // ALP_RANDOM_HPP_
