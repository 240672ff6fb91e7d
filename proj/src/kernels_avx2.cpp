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
// AVX2 variant of the Bernoulli fill. Four counter lanes per step; the
// SplitMix64 finalizer is evaluated with emulated 64-bit multiplies.
// Must stay draw-for-draw identical to the scalar reference.

#if defined(ALP_HAVE_AVX2_BUILD)

#include <immintrin.h>

#include "alp/kernels.hpp"
#include "alp/random.hpp"

namespace alp::kernels {

namespace {

inline __m256i mullo64(__m256i x, __m256i c) {
  const __m256i lo = _mm256_mul_epu32(x, c);
  const __m256i xh = _mm256_srli_epi64(x, 32);
  const __m256i ch = _mm256_srli_epi64(c, 32);
  const __m256i cross =
      _mm256_add_epi64(_mm256_mul_epu32(xh, c), _mm256_mul_epu32(x, ch));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64x4(__m256i z) {
  const __m256i mul1 = _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ULL));
  const __m256i mul2 = _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBULL));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, mul1);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, mul2);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

inline std::uint64_t fill_word(std::uint64_t state0, std::uint64_t threshold) {
  const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(threshold));
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * kGoldenGamma));
  __m256i state = _mm256_setr_epi64x(
      static_cast<long long>(state0),
      static_cast<long long>(state0 + kGoldenGamma),
      static_cast<long long>(state0 + 2 * kGoldenGamma),
      static_cast<long long>(state0 + 3 * kGoldenGamma));
  std::uint64_t word = 0;
  for (unsigned g = 0; g < 16; ++g) {
    const __m256i value = _mm256_srli_epi64(mix64x4(state), 11);
    // Operands stay below 2^53, so the signed compare is exact.
    const __m256i hit = _mm256_cmpgt_epi64(thr, value);
    const auto mask = static_cast<std::uint64_t>(
        _mm256_movemask_pd(_mm256_castsi256_pd(hit)));
    word |= mask << (4 * g);
    state = _mm256_add_epi64(state, step);
  }
  return word;
}

}  // namespace

void fill_bernoulli_split_avx2(std::uint64_t* words, std::uint64_t nbits,
                               std::uint64_t split, std::uint64_t threshold_low,
                               std::uint64_t threshold_high, std::uint64_t key,
                               std::uint64_t first) {
  const std::uint64_t nwords = words_for_bits(nbits);
  for (std::uint64_t w = 0; w < nwords; ++w) {
    const std::uint64_t base = w << 6;
    const unsigned in_word =
        static_cast<unsigned>(nbits - base < 64 ? nbits - base : 64);
    std::uint64_t word;
    if (base < split && split < base + 64) {
      // Threshold band changes inside this word; take the scalar path.
      word = 0;
      for (unsigned t = 0; t < in_word; ++t) {
        const std::uint64_t j = base + t;
        const std::uint64_t threshold =
            j < split ? threshold_low : threshold_high;
        const std::uint64_t draw = mix64(key + (first + j) * kGoldenGamma);
        if ((draw >> 11) < threshold) word |= 1ULL << t;
      }
    } else {
      const std::uint64_t threshold =
          base >= split ? threshold_high : threshold_low;
      word = fill_word(key + (first + base) * kGoldenGamma, threshold);
      if (in_word < 64) word &= (1ULL << in_word) - 1;
    }
    words[w] = word;
  }
}

}  // namespace alp::kernels

#endif  // ALP_HAVE_AVX2_BUILD
