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

#ifndef ALP_BIT_MATRIX_HPP_
#define ALP_BIT_MATRIX_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace alp {

// Packed bit matrix, column major: the rows of one column are contiguous,
// LSB first, padded to whole 64-bit words per column. Estimation reads one
// bit per column, so a column is the unit of locality. Padding bits are
// kept at zero.
class BitMatrix {
 public:
  BitMatrix(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows),
        cols_(cols),
        words_per_col_((static_cast<std::uint64_t>(rows) + 63) / 64),
        words_(words_per_col_ * cols, 0) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("bit matrix dimensions must be positive");
    }
  }

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::uint64_t bit_count() const {
    return static_cast<std::uint64_t>(rows_) * cols_;
  }
  std::uint64_t words_per_column() const { return words_per_col_; }

  bool get(std::uint32_t row, std::uint32_t col) const {
    check(row, col);
    const std::uint64_t w = words_[words_per_col_ * col + (row >> 6)];
    return (w >> (row & 63)) & 1;
  }

  void set(std::uint32_t row, std::uint32_t col) {
    check(row, col);
    words_[words_per_col_ * col + (row >> 6)] |= 1ULL << (row & 63);
  }

  std::span<const std::uint64_t> column_words(std::uint32_t col) const {
    return {words_.data() + words_per_col_ * col, words_per_col_};
  }

  // XORs `mask` (words_per_column() words) into a column and clears the
  // padding bits above rows().
  void xor_column(std::uint32_t col, const std::uint64_t* mask) {
    std::uint64_t* dst = words_.data() + words_per_col_ * col;
    for (std::uint64_t w = 0; w < words_per_col_; ++w) dst[w] ^= mask[w];
    const unsigned tail = rows_ & 63;
    if (tail != 0) dst[words_per_col_ - 1] &= (1ULL << tail) - 1;
  }

  bool operator==(const BitMatrix&) const = default;

 private:
  void check(std::uint32_t row, std::uint32_t col) const {
    if (row >= rows_ || col >= cols_) {
      throw std::out_of_range("bit matrix position out of range");
    }
  }

  std::uint32_t rows_;
  std::uint32_t cols_;
  std::uint64_t words_per_col_;
  std::vector<std::uint64_t> words_;
};

}  // namespace alp

#endif  // ALP_BIT_MATRIX_HPP_
