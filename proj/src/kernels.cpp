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

#include <atomic>
#include <stdexcept>

#include "alp/kernels.hpp"

namespace alp::kernels {

namespace {

Isa detect_isa() {
#if defined(ALP_HAVE_AVX2_BUILD)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> active{detect_isa()};
  return active;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa preferred_isa() {
  static const Isa preferred = detect_isa();
  return preferred;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && preferred_isa() != Isa::avx2) {
    throw std::invalid_argument("avx2 kernels are not supported on this CPU");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

void fill_bernoulli_split(std::uint64_t* words, std::uint64_t nbits,
                          std::uint64_t split, std::uint64_t threshold_low,
                          std::uint64_t threshold_high, std::uint64_t key,
                          std::uint64_t first) {
#if defined(ALP_HAVE_AVX2_BUILD)
  if (active_isa() == Isa::avx2) {
    fill_bernoulli_split_avx2(words, nbits, split, threshold_low,
                              threshold_high, key, first);
    return;
  }
#endif
  fill_bernoulli_split_scalar(words, nbits, split, threshold_low,
                              threshold_high, key, first);
}

}  // namespace alp::kernels
