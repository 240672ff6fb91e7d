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

#include <bit>

#include "alp/kernels.hpp"
#include "alp/random.hpp"

namespace alp::kernels {

void fill_bernoulli_split_scalar(std::uint64_t* words, std::uint64_t nbits,
                                 std::uint64_t split, std::uint64_t threshold_low,
                                 std::uint64_t threshold_high, std::uint64_t key,
                                 std::uint64_t first) {
  const std::uint64_t nwords = words_for_bits(nbits);
  for (std::uint64_t w = 0; w < nwords; ++w) words[w] = 0;
  for (std::uint64_t j = 0; j < nbits; ++j) {
    const std::uint64_t threshold = j < split ? threshold_low : threshold_high;
    const std::uint64_t draw = mix64(key + (first + j) * kGoldenGamma);
    if ((draw >> 11) < threshold) {
      words[j >> 6] |= 1ULL << (j & 63);
    }
  }
}

WalkResult prefix_walk_argmax_reference(const std::uint64_t* words,
                                        std::uint64_t nbits) {
  WalkResult r{0, 0, 1};
  std::int64_t acc = 0;
  for (std::uint64_t j = 0; j < nbits; ++j) {
    acc += (words[j >> 6] >> (j & 63)) & 1 ? 1 : -1;
    if (acc > r.best) {
      r.best = acc;
      r.index_sum = j + 1;
      r.count = 1;
    } else if (acc == r.best) {
      r.index_sum += j + 1;
      ++r.count;
    }
  }
  return r;
}

WalkResult prefix_walk_argmax(const std::uint64_t* words, std::uint64_t nbits) {
  WalkResult r{0, 0, 1};
  std::int64_t acc = 0;
  const std::uint64_t nwords = words_for_bits(nbits);
  for (std::uint64_t w = 0; w < nwords; ++w) {
    const std::uint64_t base = w << 6;
    const unsigned in_word =
        static_cast<unsigned>(nbits - base < 64 ? nbits - base : 64);
    const std::uint64_t mask =
        in_word == 64 ? ~0ULL : (1ULL << in_word) - 1;
    const std::uint64_t bits = words[w] & mask;
    const int pc = std::popcount(bits);
    // Within a word the walk can rise by at most popcount; if even that
    // cannot reach the current best, only the net movement matters.
    if (acc + pc < r.best) {
      acc += 2 * pc - static_cast<int>(in_word);
      continue;
    }
    for (unsigned t = 0; t < in_word; ++t) {
      acc += (bits >> t) & 1 ? 1 : -1;
      if (acc > r.best) {
        r.best = acc;
        r.index_sum = base + t + 1;
        r.count = 1;
      } else if (acc == r.best) {
        r.index_sum += base + t + 1;
        ++r.count;
      }
    }
  }
  return r;
}

}  // namespace alp::kernels
