// Copyright 2026 The rgdecode Authors
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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgdecode {

/// Operand sizes disagree (qubit counts, basis sizes, table lengths).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A word is not in the span of the basis it was decomposed against.
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad user-facing configuration: lattice sizes, schedules, cell files.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A function was called outside its precondition (odd syndrome, open operator, ...).
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Packed GF(2) vector.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& o) {
    if (o.n_ != n_) throw DimensionError("BitVector size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  [[nodiscard]] bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  [[nodiscard]] std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  /// Parity of the bitwise AND with `o`.
  [[nodiscard]] bool dot(const BitVector& o) const {
    if (o.n_ != n_) throw DimensionError("BitVector size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }
  /// Low 64 bits as an integer; used as a table index for short vectors.
  [[nodiscard]] std::uint64_t to_index() const { return words_.empty() ? 0 : words_[0]; }
  static BitVector from_index(std::uint64_t idx, std::size_t n) {
    BitVector b(n);
    if (!b.words_.empty()) b.words_[0] = n >= 64 ? idx : (idx & ((std::uint64_t{1} << n) - 1));
    return b;
  }
  [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

inline int positive_mod(long v, long m) {
  const long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace rgdecode
