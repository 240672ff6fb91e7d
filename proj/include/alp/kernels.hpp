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
// Packed-bit kernels behind the mechanism and the simulation harness.
// Every kernel has a scalar reference implementation; SIMD variants are
// selected at runtime and must produce bit-identical output (enforced by
// the equivalence tests). Bits are packed into 64-bit words, LSB first.

#ifndef ALP_KERNELS_HPP_
#define ALP_KERNELS_HPP_

#include <cstdint>

namespace alp::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Best ISA supported by this CPU.
Isa preferred_isa();

// Active ISA for dispatched kernels. Defaults to preferred_isa();
// settable for tests and benchmarks. Setting an unsupported ISA throws.
Isa active_isa();
void set_active_isa(Isa isa);

// Fills bits [0, nbits): bit j is a Bernoulli draw computed from draw
// (key, first + j) against an integer threshold (see bernoulli_threshold).
// Bits j < split use threshold_low, the rest threshold_high. Word storage
// past nbits is zeroed.
void fill_bernoulli_split(std::uint64_t* words, std::uint64_t nbits,
                          std::uint64_t split, std::uint64_t threshold_low,
                          std::uint64_t threshold_high, std::uint64_t key,
                          std::uint64_t first);

void fill_bernoulli_split_scalar(std::uint64_t* words, std::uint64_t nbits,
                                 std::uint64_t split, std::uint64_t threshold_low,
                                 std::uint64_t threshold_high, std::uint64_t key,
                                 std::uint64_t first);

#if defined(ALP_HAVE_AVX2_BUILD)
void fill_bernoulli_split_avx2(std::uint64_t* words, std::uint64_t nbits,
                               std::uint64_t split, std::uint64_t threshold_low,
                               std::uint64_t threshold_high, std::uint64_t key,
                               std::uint64_t first);
#endif

inline void fill_bernoulli(std::uint64_t* words, std::uint64_t nbits,
                           std::uint64_t threshold, std::uint64_t key,
                           std::uint64_t first) {
  fill_bernoulli_split(words, nbits, nbits, threshold, threshold, key, first);
}

// Result of scanning the +/-1 prefix walk over a packed bit sequence:
// step j in [1, nbits] moves +1 if bit j-1 is set, -1 otherwise.
// `best` is the maximum prefix value over steps {0, ..., nbits};
// `index_sum` and `count` describe the set of steps attaining it
// (step 0 with value 0 is always a candidate).
struct WalkResult {
  std::int64_t best;
  std::uint64_t index_sum;
  std::uint64_t count;

  bool operator==(const WalkResult&) const = default;
};

// Word-at-a-time scan; skips words that cannot contain a new maximum.
WalkResult prefix_walk_argmax(const std::uint64_t* words, std::uint64_t nbits);

// Bit-at-a-time reference used by the equivalence tests.
WalkResult prefix_walk_argmax_reference(const std::uint64_t* words,
                                        std::uint64_t nbits);

inline std::uint64_t words_for_bits(std::uint64_t nbits) {
  return (nbits + 63) / 64;
}

}  // namespace alp::kernels

#endif  // ALP_KERNELS_HPP_
