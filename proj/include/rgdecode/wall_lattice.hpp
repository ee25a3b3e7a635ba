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
#include <vector>

#include "rgdecode/common.hpp"

namespace rgdecode {

using Coord = std::array<int, 3>;

/// Periodic D-dimensional lattice of check cubes (D = 2 or 3) with one bit on
/// every wall. Wall (c, a) separates cube c from cube c - e_a; the check of
/// cube c is the parity of walls (c, a) and (c + e_a, a) over all axes a.
class WallLattice {
 public:
  WallLattice() = default;
  WallLattice(int dims, Coord size);

  [[nodiscard]] int dims() const { return dims_; }
  [[nodiscard]] const Coord& size() const { return size_; }
  [[nodiscard]] int size(int axis) const { return size_[axis]; }
  [[nodiscard]] int num_cubes() const { return size_[0] * size_[1] * size_[2]; }
  [[nodiscard]] int num_walls() const { return num_cubes() * dims_; }

  [[nodiscard]] int cube(const Coord& c) const {
    return (positive_mod(c[0], size_[0]) * size_[1] + positive_mod(c[1], size_[1])) * size_[2] +
           positive_mod(c[2], size_[2]);
  }
  [[nodiscard]] Coord coord(int cube) const {
    return {cube / (size_[1] * size_[2]), (cube / size_[2]) % size_[1], cube % size_[2]};
  }
  [[nodiscard]] int wall(const Coord& c, int axis) const { return cube(c) * dims_ + axis; }
  [[nodiscard]] int neighbour(int cube, int axis, int step) const;

  /// Check parities of a wall configuration.
  [[nodiscard]] std::vector<std::uint8_t> syndrome(const std::vector<std::uint8_t>& walls) const;
  /// Parity of the walls (c, a) with c_a = 0, one bit per axis (bit a).
  [[nodiscard]] unsigned cut_parities(const std::vector<std::uint8_t>& walls) const;
  /// Closed loop of walls (c, a) along one line in direction a; cut parity e_a.
  [[nodiscard]] std::vector<std::uint8_t> logical_loop(int axis) const;
  /// Deterministic configuration with the given syndrome: defects are paired in
  /// the order listed by `scan_axes` (outermost first) and joined by straight
  /// moves along `path_axes` in turn, never crossing the periodic boundary.
  [[nodiscard]] std::vector<std::uint8_t> pure_configuration(const std::vector<std::uint8_t>& syndrome,
                                                             const std::vector<int>& scan_axes,
                                                             const std::vector<int>& path_axes) const;

 private:
  int dims_ = 0;
  Coord size_{1, 1, 1};
};

}  // namespace rgdecode
