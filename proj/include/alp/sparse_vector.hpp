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

#ifndef ALP_SPARSE_VECTOR_HPP_
#define ALP_SPARSE_VECTOR_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace alp {

struct Entry {
  std::uint64_t index;
  double value;

  bool operator==(const Entry&) const = default;
};

// Non-negative k-sparse vector: at most `sparsity` entries, each value in
// (0, bound], indices strictly increasing and below `dimension`. Absent
// indices read as exactly zero.
class SparseVector {
 public:
  SparseVector(std::uint64_t dimension, double bound, std::uint32_t sparsity,
               std::vector<Entry> entries);

  static SparseVector zero(std::uint64_t dimension, double bound,
                           std::uint32_t sparsity) {
    return SparseVector(dimension, bound, sparsity, {});
  }

  std::uint64_t dimension() const { return dimension_; }
  double bound() const { return bound_; }
  std::uint32_t sparsity() const { return sparsity_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  // Zero for absent indices; throws std::out_of_range past the dimension.
  double value_at(std::uint64_t index) const;

 private:
  std::uint64_t dimension_;
  double bound_;
  std::uint32_t sparsity_;
  std::vector<Entry> entries_;
};

// l1 distance between two vectors of equal dimension.
double l1_distance(const SparseVector& a, const SparseVector& b);

// Real-valued k-sparse vector with entries in [-bound, bound]. Splits into
// a positive and a negated-negative part, both k-sparse on disjoint
// supports, so the l1 metric carries over entrywise.
class SignedSparseVector {
 public:
  SignedSparseVector(std::uint64_t dimension, double bound,
                     std::uint32_t sparsity, std::vector<Entry> entries);

  std::uint64_t dimension() const { return dimension_; }
  double bound() const { return bound_; }
  std::uint32_t sparsity() const { return sparsity_; }
  std::span<const Entry> entries() const { return entries_; }
  double value_at(std::uint64_t index) const;

  // (positive part, negated negative part).
  std::pair<SparseVector, SparseVector> decompose() const;

 private:
  std::uint64_t dimension_;
  double bound_;
  std::uint32_t sparsity_;
  std::vector<Entry> entries_;
};

}  // namespace alp

#endif  // ALP_SPARSE_VECTOR_HPP_
