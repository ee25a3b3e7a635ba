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

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "rgdecode/pauli.hpp"

namespace rgdecode {

using Offset = std::array<int, 3>;

/// Where a cell-local qubit sits: the low wall, in direction `role`, of the
/// block cube at `offset` (offsets are in the cell's own role frame).
struct CellSite {
  Offset offset{0, 0, 0};
  int role = 0;
};

/// A qubit that also appears in the neighbouring cell displaced by `neighbour`
/// blocks, under that cell's local index `neighbour_local`.
struct SharedQubit {
  int local = 0;
  Offset neighbour{0, 0, 0};
  int neighbour_local = 0;
};

/// A unit cell: a block of extent[0] x extent[1] (x extent[2]) cubes of the
/// check lattice, its X-type operator basis, and the geometry tying local
/// qubit labels to lattice walls. The highest-corner cube is the one whose
/// check is left out.
class UnitCellSpec {
 public:
  UnitCellSpec(std::string name, int roles, Offset extent, std::vector<CellSite> sites, CellBasis basis);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int roles() const { return roles_; }
  [[nodiscard]] const Offset& extent() const { return extent_; }
  [[nodiscard]] int num_qubits() const { return static_cast<int>(sites_.size()); }
  [[nodiscard]] const std::vector<CellSite>& sites() const { return sites_; }
  [[nodiscard]] const CellBasis& basis() const { return *basis_; }
  [[nodiscard]] const std::shared_ptr<const CellBasis>& basis_ptr() const { return basis_; }
  [[nodiscard]] int block_volume() const { return extent_[0] * extent_[1] * extent_[2]; }
  /// Roles along which the cell coarse-grains (extent 2).
  [[nodiscard]] std::vector<int> renormalized_roles() const;

  /// Measured cube offset for each T generator, in T order.
  [[nodiscard]] const std::vector<Offset>& measured_cubes() const { return t_cube_; }
  [[nodiscard]] const Offset& unmeasured_cube() const { return unmeasured_; }
  /// Role whose coarse wall each L generator measures, in L order.
  [[nodiscard]] const std::vector<int>& current_roles() const { return l_role_; }
  /// Local-qubit masks reading off the T exponents / L exponents of a configuration.
  [[nodiscard]] const std::vector<std::uint32_t>& syndrome_functionals() const { return t_dual_; }
  [[nodiscard]] const std::vector<std::uint32_t>& current_functionals() const { return l_dual_; }
  [[nodiscard]] const std::vector<SharedQubit>& shared_map() const { return shared_; }
  /// Local qubits lying on the faces of the cube at `offset`.
  [[nodiscard]] std::vector<int> faces_of(const Offset& offset) const;
  [[nodiscard]] int find_site(const Offset& offset, int role) const;

 private:
  std::string name_;
  int roles_;
  Offset extent_;
  std::vector<CellSite> sites_;
  std::shared_ptr<const CellBasis> basis_;
  std::vector<Offset> t_cube_;
  Offset unmeasured_{};
  std::vector<int> l_role_;
  std::vector<std::uint32_t> t_dual_;
  std::vector<std::uint32_t> l_dual_;
  std::vector<SharedQubit> shared_;
};

/// Built-in cells: "cell2x2" (2D, flux sector), "cell211", "cell221".
const UnitCellSpec& builtin_cell(const std::string& name);
std::vector<std::string> builtin_cell_names();

/// The full 24-generator Pauli basis of the 2D cell (X and Z sectors).
const CellBasis& cell2x2_full_basis();

/// Text of a built-in cell in the cell-file format.
std::string builtin_cell_text(const std::string& name);

/// Cell file: the CellBasis text format plus geometry lines
///   roles R / extent a b [c] / site <qubit> <o0> <o1> [<o2>] <role>
UnitCellSpec parse_cell_file(const std::string& name, const std::string& text);
UnitCellSpec load_cell_file(const std::string& path);

}  // namespace rgdecode
