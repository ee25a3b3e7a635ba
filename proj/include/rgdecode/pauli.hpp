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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgdecode/common.hpp"

namespace rgdecode {

/// Single-qubit Pauli letter. The numeric value packs (x, z) as bit 0 / bit 1,
/// so the product of two labels is their XOR.
enum class PauliLabel : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline PauliLabel operator*(PauliLabel a, PauliLabel b) {
  return static_cast<PauliLabel>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
char to_char(PauliLabel l);

/// n-qubit Pauli operator in binary symplectic form. Phases are not tracked.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::size_t n) : x_(n), z_(n) {}
  PauliWord(BitVector x, BitVector z);

  static PauliWord single(std::size_t n, std::size_t q, PauliLabel l);
  /// Parses whitespace separated tokens such as "X0 Z3 Y7".
  static PauliWord parse(std::string_view text, std::size_t n);

  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] const BitVector& x() const { return x_; }
  [[nodiscard]] const BitVector& z() const { return z_; }
  [[nodiscard]] bool is_identity() const { return !x_.any() && !z_.any(); }
  [[nodiscard]] bool has_z() const { return z_.any(); }
  [[nodiscard]] std::size_t weight() const;

  void set(std::size_t q, PauliLabel l);
  PauliWord& operator*=(const PauliWord& o);
  friend PauliWord operator*(PauliWord a, const PauliWord& b) { return a *= b; }
  friend bool operator==(const PauliWord&, const PauliWord&) = default;

  [[nodiscard]] std::string str() const;

 private:
  BitVector x_;
  BitVector z_;
};

PauliWord multiply(const PauliWord& a, const PauliWord& b);
bool commutes(const PauliWord& a, const PauliWord& b);
PauliLabel restrict(const PauliWord& w, std::size_t q);

enum class GeneratorTag : std::uint8_t { S, T, E, L };
char to_char(GeneratorTag t);

/// Exponents x_i of E = prod_i Q_i^{x_i} for a chosen generating set.
using ExponentVector = BitVector;

/// Tagged generating set of the Pauli group (or its X part) on a cell's qubits.
///
/// `checks` are the measured check operators of the cell. Every T generator
/// anticommutes with exactly one check and all other generators commute with
/// every check; this is what makes the T exponents of a decomposition equal to
/// the observed syndrome. When no checks are given the S generators are used.
class CellBasis {
 public:
  CellBasis() = default;
  CellBasis(std::size_t num_qubits, std::vector<PauliWord> generators, std::vector<GeneratorTag> tags,
            std::vector<std::string> names = {}, std::vector<PauliWord> checks = {});

  static CellBasis parse(std::string_view text);
  static CellBasis load(const std::string& path);
  [[nodiscard]] std::string serialize() const;

  [[nodiscard]] std::size_t num_qubits() const { return n_; }
  [[nodiscard]] std::size_t size() const { return gens_.size(); }
  [[nodiscard]] const PauliWord& generator(std::size_t i) const { return gens_[i]; }
  [[nodiscard]] const std::vector<PauliWord>& generators() const { return gens_; }
  [[nodiscard]] GeneratorTag tag(std::size_t i) const { return tags_[i]; }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
  [[nodiscard]] const std::vector<PauliWord>& checks() const { return checks_; }
  [[nodiscard]] std::vector<std::size_t> indices_with(GeneratorTag t) const;
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

  /// True when every generator is X-type and the basis spans the X group only.
  [[nodiscard]] bool x_only() const { return x_only_; }
  /// True when the generators span the whole (X-only or full) group on the qubits.
  [[nodiscard]] bool complete() const { return gens_.size() == (x_only_ ? n_ : 2 * n_); }

  /// Sub-basis made of the listed generators, in the given order.
  [[nodiscard]] CellBasis sub_basis(const std::vector<std::size_t>& which) const;

  /// Product of generators selected by `e`.
  [[nodiscard]] PauliWord compose(const ExponentVector& e) const;
  /// Exponent vector of `w`; throws DecompositionError when `w` is outside the span.
  ExponentVector decompose(const PauliWord& w) const;

  /// Checks full rank and the T/check conjugacy rule; throws ConfigError.
  void validate() const;

  /// FNV-1a of the serialized form, used to tag binary table dumps.
  [[nodiscard]] std::uint64_t hash() const;

 private:
  [[nodiscard]] BitVector flatten(const PauliWord& w) const;
  void factorize();

  std::size_t n_ = 0;
  bool x_only_ = false;
  std::vector<PauliWord> gens_;
  std::vector<GeneratorTag> tags_;
  std::vector<std::string> names_;
  std::vector<PauliWord> checks_;

  // Row-reduced copy of the generator matrix: reduced_[r] has its leading bit
  // at pivot_[r] and equals the sum of the generators flagged in combo_[r].
  std::vector<BitVector> reduced_;
  std::vector<std::size_t> pivot_;
  std::vector<BitVector> combo_;
};

ExponentVector decompose(const PauliWord& w, const CellBasis& basis);

}  // namespace rgdecode
