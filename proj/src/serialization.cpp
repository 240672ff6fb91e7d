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

#include "alp/serialization.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace alp::io {

namespace {

constexpr std::uint32_t kEmbeddingMagic = 0x45504C41;  // "ALPE"
constexpr std::uint32_t kCombinedMagic = 0x43504C41;   // "ALPC"
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back((v >> (8 * i)) & 0xFF);
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back((v >> (8 * i)) & 0xFF);
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> data) {
    bytes_.insert(bytes_.end(), data.begin(), data.end());
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{byte()} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{byte()} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const std::uint8_t> raw(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw std::runtime_error("truncated input");
    const auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void expect_done() const {
    if (pos_ != bytes_.size()) {
      throw std::runtime_error("trailing bytes after the last block");
    }
  }

 private:
  std::uint8_t byte() {
    if (pos_ >= bytes_.size()) throw std::runtime_error("truncated input");
    return bytes_[pos_++];
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void write_hash_seq(Writer& w, const HashFunctionSeq& hashes) {
  w.u64(hashes.domain());
  w.u64(hashes.range());
  w.u64(hashes.size());
  for (const auto& seed : hashes.seeds()) {
    w.u64(seed.multiplier);
    w.u64(seed.increment);
  }
}

HashFunctionSeq read_hash_seq(Reader& r) {
  const std::uint64_t domain = r.u64();
  const std::uint64_t range = r.u64();
  const std::uint64_t count = r.u64();
  if (range > 0xFFFFFFFFULL || count > 0xFFFFFFFFULL) {
    throw std::runtime_error("hash sequence header out of range");
  }
  std::vector<HashFunctionSeq::Seed> seeds;
  seeds.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    const std::uint64_t mul = r.u64();
    const std::uint64_t add = r.u64();
    seeds.push_back({mul, add});
  }
  return HashFunctionSeq(domain, static_cast<std::uint32_t>(range),
                         std::move(seeds));
}

void write_noisy(Writer& w, const NoisySparseVector& noisy) {
  w.u64(noisy.dimension());
  w.f64(noisy.bound());
  w.u64(noisy.size());
  for (const Entry& e : noisy.entries()) {
    w.u64(e.index);
    w.f64(e.value);
  }
}

NoisySparseVector read_noisy(Reader& r) {
  const std::uint64_t dimension = r.u64();
  const double bound = r.f64();
  const std::uint64_t count = r.u64();
  if (count > dimension) throw std::runtime_error("entry count exceeds dimension");
  std::vector<Entry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t index = r.u64();
    const double value = r.f64();
    entries.push_back({index, value});
  }
  return NoisySparseVector(dimension, bound, std::move(entries));
}

std::uint64_t column_bytes(std::uint32_t rows) { return (rows + 7ULL) / 8; }

void write_embedding(Writer& w, const Embedding& embedding) {
  const AlpParams& p = embedding.params();
  w.u32(kEmbeddingMagic);
  w.u32(kFormatVersion);
  w.u64(embedding.dimension());
  w.f64(embedding.bound());
  w.u64(embedding.sparsity());
  w.f64(p.alpha);
  w.f64(p.beta);
  w.f64(p.epsilon);
  w.u64(p.s);
  w.u64(p.m);
  write_hash_seq(w, embedding.hashes());
  const BitMatrix& bits = embedding.bits();
  std::vector<std::uint8_t> column(column_bytes(p.s));
  for (std::uint32_t col = 0; col < p.m; ++col) {
    const auto words = bits.column_words(col);
    for (std::uint64_t b = 0; b < column.size(); ++b) {
      column[b] = static_cast<std::uint8_t>(
          (words[b >> 3] >> (8 * (b & 7))) & 0xFF);
    }
    w.raw(column);
  }
}

Embedding read_embedding(Reader& r) {
  if (r.u32() != kEmbeddingMagic) throw std::runtime_error("bad embedding magic");
  if (r.u32() != kFormatVersion) throw std::runtime_error("unsupported version");
  const std::uint64_t dimension = r.u64();
  const double bound = r.f64();
  const std::uint64_t sparsity = r.u64();
  const double alpha = r.f64();
  const double beta = r.f64();
  const double epsilon = r.f64();
  const std::uint64_t s = r.u64();
  const std::uint64_t m = r.u64();
  if (s == 0 || s > 0xFFFFFFFFULL || m == 0 || m > 0xFFFFFFFFULL ||
      sparsity > 0xFFFFFFFFULL) {
    throw std::runtime_error("embedding header out of range");
  }
  AlpParams params = AlpParams::create(alpha, beta,
                                       static_cast<std::uint32_t>(s), epsilon);
  if (params.m != m) throw std::runtime_error("column count disagrees with parameters");
  HashFunctionSeq hashes = read_hash_seq(r);
  if (hashes.domain() != dimension || hashes.range() != s ||
      hashes.size() != m) {
    throw std::runtime_error("hash sequence disagrees with the embedding header");
  }
  BitMatrix bits(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(m));
  const std::uint64_t per_column = column_bytes(bits.rows());
  for (std::uint32_t col = 0; col < bits.cols(); ++col) {
    const auto column = r.raw(per_column);
    for (std::uint32_t row = 0; row < bits.rows(); ++row) {
      if ((column[row >> 3] >> (row & 7)) & 1) bits.set(row, col);
    }
    for (std::uint64_t b = 0; b < per_column; ++b) {
      const unsigned used = bits.rows() - static_cast<unsigned>(8 * b) < 8
                                ? bits.rows() % 8
                                : 8;
      if (used < 8 && (column[b] >> used) != 0) {
        throw std::runtime_error("non-zero padding bits in a column");
      }
    }
  }
  return Embedding(params, dimension, bound,
                   static_cast<std::uint32_t>(sparsity), std::move(hashes),
                   std::move(bits));
}

}  // namespace

std::vector<std::uint8_t> serialize(const HashFunctionSeq& hashes) {
  Writer w;
  write_hash_seq(w, hashes);
  return w.take();
}

std::vector<std::uint8_t> serialize(const NoisySparseVector& noisy) {
  Writer w;
  write_noisy(w, noisy);
  return w.take();
}

std::vector<std::uint8_t> serialize(const Embedding& embedding) {
  Writer w;
  write_embedding(w, embedding);
  return w.take();
}

std::vector<std::uint8_t> serialize(const CombinedRepresentation& rep) {
  Writer w;
  w.u32(kCombinedMagic);
  w.u32(kFormatVersion);
  w.u32(rep.mode() == ThresholdMode::pure ? 0 : 1);
  w.f64(rep.split().epsilon1);
  w.f64(rep.split().epsilon2);
  w.f64(rep.delta());
  w.f64(rep.threshold());
  write_noisy(w, rep.noisy());
  write_embedding(w, rep.embedding());
  return w.take();
}

HashFunctionSeq parse_hash_seq(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  HashFunctionSeq hashes = read_hash_seq(r);
  r.expect_done();
  return hashes;
}

NoisySparseVector parse_noisy(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  NoisySparseVector noisy = read_noisy(r);
  r.expect_done();
  return noisy;
}

Embedding parse_embedding(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  Embedding embedding = read_embedding(r);
  r.expect_done();
  return embedding;
}

CombinedRepresentation parse_combined(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.u32() != kCombinedMagic) throw std::runtime_error("bad combined magic");
  if (r.u32() != kFormatVersion) throw std::runtime_error("unsupported version");
  const std::uint32_t mode_tag = r.u32();
  if (mode_tag > 1) throw std::runtime_error("unknown mode tag");
  const double epsilon1 = r.f64();
  const double epsilon2 = r.f64();
  const double delta = r.f64();
  const double t = r.f64();
  NoisySparseVector noisy = read_noisy(r);
  Embedding embedding = read_embedding(r);
  r.expect_done();
  return CombinedRepresentation(
      mode_tag == 0 ? ThresholdMode::pure : ThresholdMode::approximate,
      BudgetSplit{epsilon1, epsilon2}, delta, t, std::move(noisy),
      std::move(embedding));
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw std::runtime_error("read failed: " + path);
  return bytes;
}

}  // namespace alp::io
