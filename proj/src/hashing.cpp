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

#include "alp/hashing.hpp"

#include <stdexcept>

namespace alp {

HashFunctionSeq::HashFunctionSeq(std::uint64_t domain, std::uint32_t range,
                                 std::vector<Seed> seeds)
    : domain_(domain), range_(range), seeds_(std::move(seeds)) {
  if (domain_ == 0) throw std::invalid_argument("hash domain must be positive");
  if (domain_ > (1ULL << 32)) {
    throw std::invalid_argument("hash domain exceeds 2^32 keys");
  }
  if (range_ == 0) throw std::invalid_argument("hash range must be positive");
  if (seeds_.empty()) throw std::invalid_argument("hash sequence must be non-empty");
}

HashFunctionSeq HashFunctionSeq::sample(std::uint64_t domain, std::uint32_t range,
                                        std::uint32_t count,
                                        RandomnessStream& rng) {
  std::vector<Seed> seeds;
  seeds.reserve(count);
  for (std::uint32_t j = 0; j < count; ++j) {
    seeds.push_back({rng.next_u64(), rng.next_u64()});
  }
  return HashFunctionSeq(domain, range, std::move(seeds));
}

void HashFunctionSeq::check_args(std::uint32_t j, std::uint64_t key) const {
  if (j >= seeds_.size()) {
    throw std::out_of_range("hash function index outside the sequence");
  }
  if (key >= domain_) {
    throw std::out_of_range("hash key outside the domain");
  }
}

}  // namespace alp
