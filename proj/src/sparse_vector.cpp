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

#include "alp/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alp {

namespace {

void validate_shape(std::uint64_t dimension, double bound,
                    std::uint32_t sparsity) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw std::invalid_argument("value bound must be positive and finite");
  }
  if (sparsity == 0) throw std::invalid_argument("sparsity bound must be positive");
}

void validate_indices(const std::vector<Entry>& entries, std::uint64_t dimension,
                      std::uint32_t sparsity) {
  if (entries.size() > sparsity) {
    throw std::invalid_argument("more entries than the sparsity bound allows");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index >= dimension) {
      throw std::out_of_range("entry index outside the dimension");
    }
    if (i > 0 && entries[i].index <= entries[i - 1].index) {
      throw std::invalid_argument("entry indices must be strictly increasing");
    }
  }
}

double lookup(const std::vector<Entry>& entries, std::uint64_t dimension,
              std::uint64_t index) {
  if (index >= dimension) throw std::out_of_range("index outside the dimension");
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), index,
      [](const Entry& e, std::uint64_t i) { return e.index < i; });
  if (it != entries.end() && it->index == index) return it->value;
  return 0.0;
}

}  // namespace

SparseVector::SparseVector(std::uint64_t dimension, double bound,
                           std::uint32_t sparsity, std::vector<Entry> entries)
    : dimension_(dimension),
      bound_(bound),
      sparsity_(sparsity),
      entries_(std::move(entries)) {
  validate_shape(dimension_, bound_, sparsity_);
  validate_indices(entries_, dimension_, sparsity_);
  for (const Entry& e : entries_) {
    if (!(e.value > 0.0) || !(e.value <= bound_) || !std::isfinite(e.value)) {
      throw std::invalid_argument("entry values must lie in (0, bound]");
    }
  }
}

double SparseVector::value_at(std::uint64_t index) const {
  return lookup(entries_, dimension_, index);
}

double l1_distance(const SparseVector& a, const SparseVector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("l1_distance requires equal dimensions");
  }
  double sum = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() ||
        (ia != a.entries().end() && ia->index < ib->index)) {
      sum += std::abs(ia->value);
      ++ia;
    } else if (ia == a.entries().end() || ib->index < ia->index) {
      sum += std::abs(ib->value);
      ++ib;
    } else {
      sum += std::abs(ia->value - ib->value);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

SignedSparseVector::SignedSparseVector(std::uint64_t dimension, double bound,
                                       std::uint32_t sparsity,
                                       std::vector<Entry> entries)
    : dimension_(dimension),
      bound_(bound),
      sparsity_(sparsity),
      entries_(std::move(entries)) {
  validate_shape(dimension_, bound_, sparsity_);
  validate_indices(entries_, dimension_, sparsity_);
  for (const Entry& e : entries_) {
    if (e.value == 0.0 || !(std::abs(e.value) <= bound_) ||
        !std::isfinite(e.value)) {
      throw std::invalid_argument("entry values must be non-zero with |value| <= bound");
    }
  }
}

double SignedSparseVector::value_at(std::uint64_t index) const {
  return lookup(entries_, dimension_, index);
}

std::pair<SparseVector, SparseVector> SignedSparseVector::decompose() const {
  std::vector<Entry> positive;
  std::vector<Entry> negative;
  for (const Entry& e : entries_) {
    if (e.value > 0.0) {
      positive.push_back(e);
    } else {
      negative.push_back({e.index, -e.value});
    }
  }
  return {SparseVector(dimension_, bound_, sparsity_, std::move(positive)),
          SparseVector(dimension_, bound_, sparsity_, std::move(negative))};
}

}  // namespace alp
