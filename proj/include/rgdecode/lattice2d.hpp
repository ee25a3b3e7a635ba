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

#include <Eigen/Core>
#include <array>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "rgdecode/pauli.hpp"
#include "rgdecode/wall_lattice.hpp"

namespace rgdecode {

enum class Alpha : std::uint8_t { H = 0, V = 1 };

/// ell x ell periodic square lattice with qubits on H and V edges.
class Lattice2D {
 public:
  explicit Lattice2D(int ell);

  [[nodiscard]] int ell() const { return ell_; }
  [[nodiscard]] std::size_t num_qubits() const { return 2 * static_cast<std::size_t>(ell_) * ell_; }
  [[nodiscard]] std::size_t qubit(int i, int j, Alpha a) const {
    return 2 * (static_cast<std::size_t>(positive_mod(i, ell_)) * ell_ + positive_mod(j, ell_)) +
           static_cast<std::size_t>(a);
  }

 private:
  int ell_;
};

using BitMatrix = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Site (a) and plaquette (b) outcomes; a set bit marks a -1 eigenvalue.
struct SyndromeConfig {
  BitMatrix a;
  BitMatrix b;

  static SyndromeConfig zeros(int ell);
  [[nodiscard]] int ell() const { return static_cast<int>(a.rows()); }
  [[nodiscard]] bool even() const;
  [[nodiscard]] bool trivial() const { return (a == 0).all() && (b == 0).all(); }
  friend bool operator==(const SyndromeConfig& l, const SyndromeConfig& r) {
    return l.a.rows() == r.a.rows() && (l.a == r.a).all() && (l.b == r.b).all();
  }
};

/// Independent Pauli channel; row q holds P(I), P(X), P(Z), P(Y).
class NoiseChannel {
 public:
  using Table = Eigen::Array<double, Eigen::Dynamic, 4>;

  explicit NoiseChannel(Table rows);
  static NoiseChannel iid(std::size_t n, double px, double pz, double py);
  static NoiseChannel bit_flip(std::size_t n, double p) { return iid(n, p, 0.0, 0.0); }
  static NoiseChannel depolarizing(std::size_t n, double p) { return iid(n, p / 3, p / 3, p / 3); }

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(rows_.rows()); }
  [[nodiscard]] const Table& table() const { return rows_; }
  [[nodiscard]] double prob(std::size_t q, PauliLabel l) const {
    return rows_(static_cast<Eigen::Index>(q), static_cast<int>(l));
  }
  [[nodiscard]] bool bit_flip_only() const;

 private:
  Table rows_;
};

/// Exponents of the bare logicals: bit 0 = X0, 1 = X1, 2 = Z0, 3 = Z1.
struct LogicalClass {
  std::uint8_t bits = 0;

  [[nodiscard]] bool x0() const { return bits & 1; }
  [[nodiscard]] bool x1() const { return bits & 2; }
  [[nodiscard]] bool z0() const { return bits & 4; }
  [[nodiscard]] bool z1() const { return bits & 8; }
  friend LogicalClass operator^(LogicalClass a, LogicalClass b) {
    return {static_cast<std::uint8_t>(a.bits ^ b.bits)};
  }
  friend bool operator==(LogicalClass, LogicalClass) = default;
};

enum class NoiseMode { BitFlip, Full };
enum class StabilizerKind { Site, Plaquette };

PauliWord stabilizer(StabilizerKind kind, int i, int j, const Lattice2D& lat);

/// Bare logical k (0 = X0, 1 = X1, 2 = Z0, 3 = Z1).
PauliWord bare_logical(int k, const Lattice2D& lat);
PauliWord class_representative(LogicalClass l, const Lattice2D& lat);

PauliWord sample_error(const NoiseChannel& channel, std::mt19937_64& rng);
SyndromeConfig extract_syndrome(const PauliWord& e, const Lattice2D& lat);
PauliWord pure_error(const SyndromeConfig& s, const Lattice2D& lat);
LogicalClass logical_class(const PauliWord& w, const Lattice2D& lat);

/// Class probabilities given the syndrome, summed over the whole stabilizer
/// group. Bit-flip mode returns 4 entries indexed by (X0, X1) and ignores a;
/// full mode returns 16 entries indexed by LogicalClass::bits.
Eigen::ArrayXd exact_class_probabilities(const SyndromeConfig& s, const NoiseChannel& channel,
                                         const Lattice2D& lat, NoiseMode mode);
inline constexpr int kExactMaxEllBitFlip = 4;
inline constexpr int kExactMaxEllFull = 2;

/// The two error sectors seen as wall lattices. X errors live on walls whose
/// checks are plaquettes; Z errors on walls whose checks are sites (the
/// lattice is mirrored so that both use the same wall convention).
enum class Sector { X, Z };
WallLattice sector_lattice(const Lattice2D& lat);
std::size_t sector_qubit(Sector sec, int cube, int axis, const Lattice2D& lat);
std::vector<std::uint8_t> sector_walls(const PauliWord& w, Sector sec, const Lattice2D& lat);
PauliWord sector_word(const std::vector<std::uint8_t>& walls, Sector sec, const Lattice2D& lat);
std::vector<std::uint8_t> sector_syndrome(const SyndromeConfig& s, Sector sec, const Lattice2D& lat);
/// Logical class bits carried by a wall-lattice cut parity in this sector.
LogicalClass sector_class(unsigned cut_bits, Sector sec);

void write_syndrome(std::ostream& os, const SyndromeConfig& s);
SyndromeConfig read_syndrome(std::istream& is, const Lattice2D& lat);
void write_error(std::ostream& os, const PauliWord& e, const Lattice2D& lat);
PauliWord read_error(std::istream& is, const Lattice2D& lat);

}  // namespace rgdecode
