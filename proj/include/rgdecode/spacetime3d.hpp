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
#include <random>
#include <vector>

#include "rgdecode/lattice2d.hpp"
#include "rgdecode/wall_lattice.hpp"

namespace rgdecode {

/// ell x ell x tau space-time lattice, periodic in all three directions.
class Lattice3D {
 public:
  explicit Lattice3D(int ell, int tau = 0);

  [[nodiscard]] int ell() const { return ell_; }
  [[nodiscard]] int tau() const { return tau_; }
  [[nodiscard]] const WallLattice& walls() const { return walls_; }

 private:
  int ell_;
  int tau_;
  WallLattice walls_;
};

/// Space-like faults eta^k_{i,j,H|V} and measurement faults mu^k_{i,j}, kept
/// as one wall configuration: eta^k_{i,j,a} is wall ((i,j,k), a) and mu^k_{i,j}
/// is wall ((i,j,k+1), T).
class ErrorHistory {
 public:
  explicit ErrorHistory(const Lattice3D& lat);
  ErrorHistory(const Lattice3D& lat, std::vector<std::uint8_t> walls);

  [[nodiscard]] bool eta(int i, int j, int k, Alpha a) const { return bits_[index_eta(i, j, k, a)]; }
  [[nodiscard]] bool mu(int i, int j, int k) const { return bits_[index_mu(i, j, k)]; }
  void flip_eta(int i, int j, int k, Alpha a) { bits_[index_eta(i, j, k, a)] ^= 1; }
  void flip_mu(int i, int j, int k) { bits_[index_mu(i, j, k)] ^= 1; }

  [[nodiscard]] const std::vector<std::uint8_t>& walls() const { return bits_; }
  [[nodiscard]] const Lattice3D& lattice() const { return lat_; }
  [[nodiscard]] std::size_t count() const;

  ErrorHistory& operator^=(const ErrorHistory& o);
  friend ErrorHistory operator^(ErrorHistory a, const ErrorHistory& b) { return a ^= b; }
  friend bool operator==(const ErrorHistory& a, const ErrorHistory& b) { return a.bits_ == b.bits_; }

 private:
  [[nodiscard]] std::size_t index_eta(int i, int j, int k, Alpha a) const {
    return static_cast<std::size_t>(lat_.walls().wall({i, j, k}, static_cast<int>(a)));
  }
  [[nodiscard]] std::size_t index_mu(int i, int j, int k) const {
    return static_cast<std::size_t>(lat_.walls().wall({i, j, k + 1}, 2));
  }

  Lattice3D lat_;
  std::vector<std::uint8_t> bits_;
};

/// Delta b^k_{i,j}, stored at cube index (i * ell + j) * tau + k.
struct CubicSyndrome {
  int ell = 0;
  int tau = 0;
  std::vector<std::uint8_t> db;

  [[nodiscard]] bool at(int i, int j, int k) const {
    return db[static_cast<std::size_t>((positive_mod(i, ell) * ell + positive_mod(j, ell)) * tau + positive_mod(k, tau))];
  }
  [[nodiscard]] std::size_t count() const;
  friend bool operator==(const CubicSyndrome&, const CubicSyndrome&) = default;
};

ErrorHistory sample_history(double p_space, double p_time, const Lattice3D& lat, std::mt19937_64& rng);
inline ErrorHistory sample_history(double p, const Lattice3D& lat, std::mt19937_64& rng) {
  return sample_history(p, p, lat, rng);
}

CubicSyndrome delta_syndrome(const ErrorHistory& h);

/// Deterministic history with the given Delta b.
ErrorHistory pure_history(const CubicSyndrome& s, const Lattice3D& lat);

/// Spatial homology class (X0, X1 bits) of a closed history.
LogicalClass history_class(const ErrorHistory& h);
/// Parity of the time-like winding of a closed history.
bool time_winding(const ErrorHistory& h);

/// True when the correction leaves no spatial logical error.
bool judge(const ErrorHistory& actual, const ErrorHistory& correction);

void write_history(std::ostream& os, const ErrorHistory& h);
ErrorHistory read_history(std::istream& is, const Lattice3D& lat);
void write_cubic_syndrome(std::ostream& os, const CubicSyndrome& s);
CubicSyndrome read_cubic_syndrome(std::istream& is, const Lattice3D& lat);

}  // namespace rgdecode
