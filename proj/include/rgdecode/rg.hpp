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
#include <vector>

#include "rgdecode/cells.hpp"
#include "rgdecode/group_prob.hpp"
#include "rgdecode/wall_lattice.hpp"

namespace rgdecode {

// ---------------------------------------------------------------------------
// Single cell, dense route. The prior is a table over the cell's own basis.

template <typename Scalar = double>
struct CellState {
  const UnitCellSpec* cell = nullptr;
  GroupDistribution<Scalar> prior;
  /// Observed outcome of each measured check, in T order.
  std::vector<std::uint8_t> syndrome_bits;
  /// One message per local qubit; qubits that are not shared keep a uniform one.
  std::vector<QubitMessage<Scalar>> in_messages;
  std::vector<QubitMessage<Scalar>> out_messages;

  static CellState make(const UnitCellSpec& cell, GroupDistribution<Scalar> prior,
                        std::vector<std::uint8_t> syndrome_bits);
};

/// Distribution of the retained currents given the syndrome, weighted by the
/// incoming messages (uniform messages give the plain RG step). The result
/// lives on the sub-basis of L generators and is normalized.
template <typename Scalar>
GroupDistribution<Scalar> cell_distribution(const CellState<Scalar>& st);

/// Outgoing message on local qubit q: the cell's belief about q with q's own
/// prior and incoming message divided out.
template <typename Scalar>
QubitMessage<Scalar> bp_message_update(const CellState<Scalar>& st, int q);

// ---------------------------------------------------------------------------
// Lattice engine.

/// Lattice axis assigned to each cell role.
struct Orientation {
  std::array<int, 3> axis{0, 1, 2};
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// One level of the check lattice: per-cube syndrome and the joint prior of
/// each cube's D owned walls (row index bit a = wall along axis a).
template <typename Scalar = double>
struct LevelState {
  WallLattice lattice;
  std::vector<std::uint8_t> syndrome;
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> joints;

  static LevelState from_wall_probs(const WallLattice& lattice, std::vector<std::uint8_t> syndrome,
                                    const ProbArray<Scalar>& flip_prob);
  /// P(wall (cube, axis) = 1).
  [[nodiscard]] Scalar wall_probability(int cube, int axis) const;
};

/// Geometry of one RG step on one level: which walls each cell sees, the
/// constrained checks, the currents, BP wiring, and every cell configuration
/// grouped by syndrome value. Independent of probabilities, so it is built
/// once per (cell, orientation, lattice size) and shared.
class CellPlan {
 public:
  CellPlan(const UnitCellSpec& cell, Orientation orient, const WallLattice& level);

  [[nodiscard]] const UnitCellSpec& cell() const { return *cell_; }
  [[nodiscard]] const Orientation& orientation() const { return orient_; }
  [[nodiscard]] const WallLattice& level() const { return level_; }
  [[nodiscard]] const WallLattice& coarse() const { return coarse_; }
  /// The block covers the whole lattice: every check is constrained.
  [[nodiscard]] bool is_final() const { return final_; }
  [[nodiscard]] int num_blocks() const { return coarse_.num_cubes(); }
  [[nodiscard]] int num_vars() const { return static_cast<int>(vars_.size()); }
  [[nodiscard]] int num_block_cubes() const { return static_cast<int>(block_cubes_.size()); }

  /// Lattice cube of block cube k of block b.
  [[nodiscard]] int block_cube(int b, int k) const;
  /// Lattice cube at a cell-frame offset from the base of block b.
  [[nodiscard]] int cube_at(int b, const Offset& offset) const;
  /// Global wall id of variable v in block b.
  [[nodiscard]] int var_wall(int b, int v) const;
  /// Cell-local qubit -> variable (aliased qubits share a variable).
  [[nodiscard]] const std::vector<int>& site_var() const { return site_var_; }
  /// Flat index (block * num_vars + var) of the other copy of this wall, or -1.
  [[nodiscard]] int partner(int flat) const { return partner_[static_cast<std::size_t>(flat)]; }
  [[nodiscard]] int num_edges() const { return num_edges_; }
  /// Check pattern of block b, one bit per constrained check.
  [[nodiscard]] std::uint32_t syndrome_key(int b, const std::vector<std::uint8_t>& syndrome) const;

  struct Var {
    Coord delta;  // owner cube relative to the block base, lattice frame
    int axis;
    int owner;    // block cube index, or -1 when borrowed from a neighbour block
  };
  [[nodiscard]] const std::vector<Var>& vars() const { return vars_; }

  struct Chunk {
    int shift;
    int width;
    int first_cube;  // block cubes covered by this chunk (owned part), or -1
    int num_cubes;
  };
  [[nodiscard]] const std::vector<Chunk>& chunks() const { return chunks_; }
  [[nodiscard]] const std::vector<std::uint32_t>& configs(std::uint32_t key) const { return configs_[key]; }
  [[nodiscard]] const std::vector<std::uint8_t>& currents(std::uint32_t key) const { return currents_[key]; }

 private:
  const UnitCellSpec* cell_;
  Orientation orient_;
  WallLattice level_;
  WallLattice coarse_;
  bool final_ = false;
  Coord extent_{1, 1, 1};  // lattice frame
  std::vector<Coord> block_cubes_;
  std::vector<Var> vars_;
  std::vector<int> site_var_;
  std::vector<Coord> checks_;  // constrained cubes relative to the base
  std::vector<int> partner_;
  int num_edges_ = 0;
  std::vector<Chunk> chunks_;
  std::vector<std::vector<std::uint32_t>> configs_;
  std::vector<std::vector<std::uint8_t>> currents_;
};

enum class MessageInit {
  Prior,      // first outgoing message = prior marginal of the wall
  Posterior,  // first outgoing message = the cell's posterior marginal
  Extrinsic,  // first outgoing message = the BP update with uniform input
};

struct RgOptions {
  int bp_rounds = 3;
  MessageInit init = MessageInit::Prior;
};

/// Messages on every (block, variable) slot: row 0 = P(0), row 1 = P(1).
template <typename Scalar>
using Messages = Eigen::Array<Scalar, 2, Eigen::Dynamic>;

/// Evaluates the cells of one level for a fixed level state.
template <typename Scalar = double>
class CellKernel {
 public:
  CellKernel(const CellPlan& plan, const LevelState<Scalar>& state);

  /// Sum over the cell configurations consistent with the syndrome, weighted by
  /// prior and incoming messages. Fills the current distribution (unnormalized,
  /// 2^D entries by coarse axis bits) and/or per-variable P(v = 1) and the total.
  void evaluate(int block, const Messages<Scalar>& in, ProbArray<Scalar>* currents,
                Messages<Scalar>* posterior) const;

  /// Prior marginal of variable v in block b.
  [[nodiscard]] Scalar prior_one(int block, int v) const;

 private:
  const CellPlan& plan_;
  const LevelState<Scalar>& state_;
};

template <typename Scalar>
Messages<Scalar> uniform_messages(const CellPlan& plan);
template <typename Scalar>
Messages<Scalar> initial_messages(const CellPlan& plan, const LevelState<Scalar>& state, MessageInit mode);
/// Outgoing messages of every cell from the given incoming ones.
template <typename Scalar>
Messages<Scalar> bp_update(const CellPlan& plan, const LevelState<Scalar>& state, const Messages<Scalar>& in);
/// Swap along BP edges: the incoming message on a slot is the partner's outgoing one.
template <typename Scalar>
Messages<Scalar> exchange(const CellPlan& plan, const Messages<Scalar>& out);
/// One synchronous flooding round: every cell updates from the current
/// incoming messages, then all outgoing messages are swapped at once.
template <typename Scalar>
Messages<Scalar> bp_round(const CellPlan& plan, const LevelState<Scalar>& state, const Messages<Scalar>& in);
/// Incoming messages after opt.bp_rounds exchanges (uniform for zero rounds).
template <typename Scalar>
Messages<Scalar> run_bp(const CellPlan& plan, const LevelState<Scalar>& state, const RgOptions& opt);

/// One RG step: BP, then each block's current distribution becomes the prior
/// of the coarse cube; the coarse syndrome is the block's total charge.
template <typename Scalar>
LevelState<Scalar> rg_iteration(const LevelState<Scalar>& level, const CellPlan& plan, const RgOptions& opt);

/// Exact class distribution of a (small) level by enumerating every wall
/// configuration, indexed by cut parities.
template <typename Scalar>
ProbArray<Scalar> exact_level_classes(const LevelState<Scalar>& level);
inline constexpr int kExactLevelMaxWalls = 26;

#define RGDECODE_RG_EXTERN(S)                                                                                 \
  extern template struct CellState<S>;                                                                        \
  extern template GroupDistribution<S> cell_distribution(const CellState<S>&);                               \
  extern template QubitMessage<S> bp_message_update(const CellState<S>&, int);                               \
  extern template struct LevelState<S>;                                                                       \
  extern template class CellKernel<S>;                                                                        \
  extern template Messages<S> uniform_messages<S>(const CellPlan&);                                           \
  extern template Messages<S> initial_messages(const CellPlan&, const LevelState<S>&, MessageInit);           \
  extern template Messages<S> bp_update(const CellPlan&, const LevelState<S>&, const Messages<S>&);            \
  extern template Messages<S> exchange(const CellPlan&, const Messages<S>&);                                  \
  extern template Messages<S> bp_round(const CellPlan&, const LevelState<S>&, const Messages<S>&);           \
  extern template Messages<S> run_bp(const CellPlan&, const LevelState<S>&, const RgOptions&);                \
  extern template LevelState<S> rg_iteration(const LevelState<S>&, const CellPlan&, const RgOptions&);        \
  extern template ProbArray<S> exact_level_classes(const LevelState<S>&);
RGDECODE_RG_EXTERN(double)
RGDECODE_RG_EXTERN(long double)
#undef RGDECODE_RG_EXTERN

}  // namespace rgdecode
