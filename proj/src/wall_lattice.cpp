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

#include "rgdecode/wall_lattice.hpp"

#include <algorithm>

namespace rgdecode {

WallLattice::WallLattice(int dims, Coord size) : dims_(dims), size_(size) {
  if (dims < 1 || dims > 3) throw DimensionError("wall lattice must have 1 to 3 dimensions");
  for (int a = 0; a < 3; ++a) {
    if (a >= dims && size_[a] != 1) throw DimensionError("unused axis must have size 1");
    if (size_[a] < 1) throw DimensionError("lattice sizes must be positive");
  }
}

int WallLattice::neighbour(int c, int axis, int step) const {
  Coord x = coord(c);
  x[axis] += step;
  return cube(x);
}

std::vector<std::uint8_t> WallLattice::syndrome(const std::vector<std::uint8_t>& walls) const {
  if (static_cast<int>(walls.size()) != num_walls()) throw DimensionError("wall vector has the wrong length");
  std::vector<std::uint8_t> s(static_cast<std::size_t>(num_cubes()), 0);
  for (int c = 0; c < num_cubes(); ++c)
    for (int a = 0; a < dims_; ++a)
      if (walls[static_cast<std::size_t>(c * dims_ + a)]) {
        s[static_cast<std::size_t>(c)] ^= 1;
        s[static_cast<std::size_t>(neighbour(c, a, -1))] ^= 1;
      }
  return s;
}

unsigned WallLattice::cut_parities(const std::vector<std::uint8_t>& walls) const {
  if (static_cast<int>(walls.size()) != num_walls()) throw DimensionError("wall vector has the wrong length");
  unsigned bits = 0;
  for (int c = 0; c < num_cubes(); ++c) {
    const Coord x = coord(c);
    for (int a = 0; a < dims_; ++a)
      if (x[a] == 0 && walls[static_cast<std::size_t>(c * dims_ + a)]) bits ^= 1u << a;
  }
  return bits;
}

std::vector<std::uint8_t> WallLattice::logical_loop(int axis) const {
  std::vector<std::uint8_t> w(static_cast<std::size_t>(num_walls()), 0);
  for (int t = 0; t < size_[axis]; ++t) {
    Coord c{0, 0, 0};
    c[axis] = t;
    w[static_cast<std::size_t>(wall(c, axis))] = 1;
  }
  return w;
}

std::vector<std::uint8_t> WallLattice::pure_configuration(const std::vector<std::uint8_t>& syndrome,
                                                          const std::vector<int>& scan_axes,
                                                          const std::vector<int>& path_axes) const {
  if (static_cast<int>(syndrome.size()) != num_cubes()) throw DimensionError("syndrome has the wrong length");
  std::vector<Coord> defects;
  for (int c = 0; c < num_cubes(); ++c)
    if (syndrome[static_cast<std::size_t>(c)]) defects.push_back(coord(c));
  if (defects.size() % 2) throw PreconditionError("syndrome has odd parity");
  std::sort(defects.begin(), defects.end(), [&](const Coord& u, const Coord& v) {
    for (int a : scan_axes)
      if (u[a] != v[a]) return u[a] < v[a];
    return false;
  });
  std::vector<std::uint8_t> w(static_cast<std::size_t>(num_walls()), 0);
  for (std::size_t p = 0; p + 1 < defects.size(); p += 2) {
    Coord at = defects[p];
    const Coord& to = defects[p + 1];
    for (int a : path_axes) {
      while (at[a] < to[a]) {
        ++at[a];
        w[static_cast<std::size_t>(wall(at, a))] ^= 1;  // wall between at - e_a and at
      }
      while (at[a] > to[a]) {
        w[static_cast<std::size_t>(wall(at, a))] ^= 1;
        --at[a];
      }
    }
  }
  return w;
}

}  // namespace rgdecode
