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
// Versioned little-endian binary formats. Layouts (all integers u64 LE,
// reals IEEE-754 binary64 LE, magics/versions u32 LE):
//
//   hash sequence   d, s, m, then m seed records (multiplier, increment)
//   noisy vector    d, u, count, then count (index, value) pairs
//   embedding       magic "ALPE", version, d, u, k, alpha, beta, epsilon,
//                   s, m, hash-sequence block, bit matrix packed column
//                   major, each column padded to whole bytes, LSB first
//   combined        magic "ALPC", version, mode, epsilon1, epsilon2,
//                   delta, t, noisy-vector block, embedding block
//
// Round-trips are bit exact.

#ifndef ALP_SERIALIZATION_HPP_
#define ALP_SERIALIZATION_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alp/alp_mechanism.hpp"
#include "alp/combined.hpp"
#include "alp/hashing.hpp"
#include "alp/threshold.hpp"

namespace alp::io {

std::vector<std::uint8_t> serialize(const HashFunctionSeq& hashes);
std::vector<std::uint8_t> serialize(const NoisySparseVector& noisy);
std::vector<std::uint8_t> serialize(const Embedding& embedding);
std::vector<std::uint8_t> serialize(const CombinedRepresentation& rep);

// Parsers consume the whole buffer and throw std::runtime_error on
// malformed or truncated input.
HashFunctionSeq parse_hash_seq(std::span<const std::uint8_t> bytes);
NoisySparseVector parse_noisy(std::span<const std::uint8_t> bytes);
Embedding parse_embedding(std::span<const std::uint8_t> bytes);
CombinedRepresentation parse_combined(std::span<const std::uint8_t> bytes);

void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace alp::io

#endif  // ALP_SERIALIZATION_HPP_
