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

#include <memory>
#include <string>
#include <vector>

#include "rgdecode/lattice2d.hpp"
#include "rgdecode/rg.hpp"
#include "rgdecode/spacetime3d.hpp"

namespace rgdecode {

struct ScheduleStep {
  std::shared_ptr<const UnitCellSpec> cell;
  Orientation orient;
};

/// Rule producing the sequence of oriented cells that reduces a lattice to a
/// single cube.
///   cell2x2  2D, the 2x2 cell at every level
///   cell211  3D, 2x1x1 cells, renormalizing the axes in turn
///   cell221  3D, 2x2x1 cells on the axis pairs (0,1), (1,2), (2,0) in turn
///   hybrid   3D, 2x2x1 while two axes remain, then 2x1x1
/// or an explicit list "CELL@a,b[,c];CELL@...", where CELL is a built-in name or
/// a cell file path and a,b,c are the lattice axes of the cell roles.
class Schedule {
 public:
  static Schedule parse(const std::string& text);
  static Schedule cell2x2() { return parse("cell2x2"); }
  static Schedule cell211() { return parse("cell211"); }
  static Schedule cell221() { return parse("cell221"); }
  static Schedule hybrid() { return parse("hybrid"); }

  [[nodiscard]] const std::string& name() const { return name_; }
  /// Steps for the given lattice; ConfigError if the shape does not fit.
  [[nodiscard]] std::vector<ScheduleStep> steps(const WallLattice& lattice) const;

 private:
  enum class Kind { Cell2x2, Cell211, Cell221, Hybrid, Explicit };
  Kind kind_ = Kind::Cell2x2;
  std::string name_;
  std::vector<ScheduleStep> explicit_;
};

/// Index of the largest entry; ties go to the smallest index.
template <typename Derived>
int argmax_first(const Eigen::ArrayBase<Derived>& a) {
  int best = 0;
  for (int i = 1; i < a.size(); ++i)
    if (a(i) > a(best)) best = i;
  return best;
}

/// RG decoder on a wall lattice: plans are built once for the lattice size.
template <typename Scalar = double>
class RgDecoderT {
 public:
  RgDecoderT(const WallLattice& lattice, const Schedule& schedule, RgOptions opt = {});

  [[nodiscard]] const WallLattice& lattice() const { return lattice_; }
  [[nodiscard]] const RgOptions& options() const { return opt_; }
  [[nodiscard]] const std::vector<CellPlan>& plans() const { return plans_; }

  /// Every level from the input lattice down to the single final cube.
  [[nodiscard]] std::vector<LevelState<Scalar>> levels(const std::vector<std::uint8_t>& syndrome,
                                                       const ProbArray<Scalar>& flip_prob) const;
  /// Distribution of the cut parities (index bit a = axis a).
  [[nodiscard]] ProbArray<Scalar> class_distribution(const std::vector<std::uint8_t>& syndrome,
                                                     const ProbArray<Scalar>& flip_prob) const;

 private:
  WallLattice lattice_;
  RgOptions opt_;
  std::vector<std::shared_ptr<const UnitCellSpec>> cells_;
  std::vector<CellPlan> plans_;
};

extern template class RgDecoderT<double>;
extern template class RgDecoderT<long double>;
using RgDecoder = RgDecoderT<double>;

/// Wall configuration equal to `base` except that the cut parities are `cut`.
std::vector<std::uint8_t> with_cut_parities(const WallLattice& lattice, std::vector<std::uint8_t> base, unsigned cut);

// ---------------------------------------------------------------------------

struct Decode2DResult {
  LogicalClass decided;
  Eigen::ArrayXd x_classes;  // by (X0, X1)
  Eigen::ArrayXd z_classes;  // by (Z0, Z1); empty in bit-flip mode
  PauliWord correction;
};

/// Decodes the flux sector (and in full mode the charge sector, independently,
/// with the marginal X and Z flip rates of the channel).
class Decoder2D {
 public:
  explicit Decoder2D(const Lattice2D& lat, const Schedule& schedule = Schedule::cell2x2(), RgOptions opt = {});

  [[nodiscard]] const Lattice2D& lattice() const { return lat_; }
  [[nodiscard]] Decode2DResult decode(const SyndromeConfig& s, const NoiseChannel& channel, NoiseMode mode) const;

 private:
  Lattice2D lat_;
  RgDecoder rg_;
};

/// True when error times correction is a stabilizer (no logical error).
bool success_2d(const PauliWord& error, const PauliWord& correction, const Lattice2D& lat);

struct Decode3DResult {
  Eigen::ArrayXd classes;  // by (X0, X1, time winding)
  LogicalClass decided;    // spatial bits
  bool time_bit = false;
  ErrorHistory correction;
};

class Decoder3D {
 public:
  explicit Decoder3D(const Lattice3D& lat, const Schedule& schedule = Schedule::cell211(), RgOptions opt = {});

  [[nodiscard]] const Lattice3D& lattice() const { return lat_; }
  [[nodiscard]] const RgDecoder& rg() const { return rg_; }
  [[nodiscard]] Decode3DResult decode(const CubicSyndrome& s, double p_space, double p_time) const;

 private:
  Lattice3D lat_;
  RgDecoder rg_;
};

/// Cut parities of error XOR correction along i, j and time (bits 0, 1, 2).
unsigned residual_directions(const ErrorHistory& error, const ErrorHistory& correction);

}  // namespace rgdecode
