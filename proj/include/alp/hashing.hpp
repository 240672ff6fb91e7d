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

#ifndef ALP_HASHING_HPP_
#define ALP_HASHING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "alp/random.hpp"

namespace alp {

// Sequence of universal hash functions [0, domain) -> [0, range), one per
// embedding column. Each function is a 64-bit multiply-add-shift with the
// top 32 bits mapped onto the range by a fixed-point multiply; for domains
// up to 2^32 a pair of distinct keys collides with probability at most
// 1/range + 2^-31 over the seed choice. Seeds are stored explicitly so a
// serialized embedding is self-describing.
class HashFunctionSeq {
 public:
  struct Seed {
    std::uint64_t multiplier;
    std::uint64_t increment;

    bool operator==(const Seed&) const = default;
  };

  HashFunctionSeq(std::uint64_t domain, std::uint32_t range,
                  std::vector<Seed> seeds);

  static HashFunctionSeq sample(std::uint64_t domain, std::uint32_t range,
                                std::uint32_t count, RandomnessStream& rng);

  std::uint64_t domain() const { return domain_; }
  std::uint32_t range() const { return range_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(seeds_.size()); }
  std::span<const Seed> seeds() const { return seeds_; }

  // Row for column j and key i; deterministic in the seeds.
  std::uint32_t eval(std::uint32_t j, std::uint64_t key) const {
    check_args(j, key);
    return eval_unchecked(j, key);
  }

  std::uint32_t eval_unchecked(std::uint32_t j, std::uint64_t key) const {
    const Seed& s = seeds_[j];
    const std::uint64_t h = s.multiplier * key + s.increment;
    const std::uint64_t top = h >> 32;
    return static_cast<std::uint32_t>((top * range_) >> 32);
  }

  bool operator==(const HashFunctionSeq&) const = default;

 private:
  void check_args(std::uint32_t j, std::uint64_t key) const;

  std::uint64_t domain_;
  std::uint32_t range_;
  std::vector<Seed> seeds_;
};

}  // namespace alp

#endif  // ALP_HASHING_HPP_
