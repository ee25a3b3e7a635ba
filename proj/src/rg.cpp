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

#include "rgdecode/rg.hpp"

#include <algorithm>
#include <bit>

namespace rgdecode {

namespace {

struct DenseTables {
  std::vector<std::uint32_t> x;  // qubit configuration of each group element
  std::uint64_t t_mask = 0;
  std::uint64_t t_value = 0;
  std::vector<std::size_t> l_index;
};

template <typename Scalar>
DenseTables dense_tables(const CellState<Scalar>& st) {
  if (st.cell == nullptr) throw PreconditionError("cell state has no cell");
  const CellBasis& basis = st.cell->basis();
  if (&st.prior.basis() != &basis && !(st.prior.basis().hash() == basis.hash()))
    throw DimensionError("prior is not expressed in the cell basis");
  const std::size_t k = basis.size();
  const auto t_idx = basis.indices_with(GeneratorTag::T);
  if (st.syndrome_bits.size() != t_idx.size()) throw DimensionError("one syndrome bit per pure error expected");
  if (st.in_messages.size() != basis.num_qubits()) throw DimensionError("one incoming message per qubit expected");
  DenseTables d;
  for (std::size_t i = 0; i < t_idx.size(); ++i) {
    d.t_mask |= std::uint64_t{1} << t_idx[i];
    if (st.syndrome_bits[i]) d.t_value |= std::uint64_t{1} << t_idx[i];
  }
  d.l_index = basis.indices_with(GeneratorTag::L);
  const std::uint64_t len = std::uint64_t{1} << k;
  d.x.assign(len, 0);
  for (std::uint64_t idx = 1; idx < len; ++idx)
    d.x[idx] = d.x[idx & (idx - 1)] ^
               static_cast<std::uint32_t>(basis.generator(static_cast<std::size_t>(std::countr_zero(idx))).x().to_index());
  return d;
}

template <typename Scalar>
Scalar message_weight(const CellState<Scalar>& st, std::uint32_t x, int skip) {
  Scalar w(1);
  for (std::size_t q = 0; q < st.in_messages.size(); ++q)
    if (static_cast<int>(q) != skip) w *= st.in_messages[q].probs((x >> q) & 1u);
  return w;
}

}  // namespace

template <typename Scalar>
CellState<Scalar> CellState<Scalar>::make(const UnitCellSpec& cell, GroupDistribution<Scalar> prior,
                                          std::vector<std::uint8_t> syndrome_bits) {
  CellState st;
  st.cell = &cell;
  st.prior = std::move(prior);
  st.syndrome_bits = std::move(syndrome_bits);
  st.in_messages.assign(static_cast<std::size_t>(cell.num_qubits()), QubitMessage<Scalar>::uniform(2));
  st.out_messages = st.in_messages;
  return st;
}

template <typename Scalar>
GroupDistribution<Scalar> cell_distribution(const CellState<Scalar>& st) {
  const DenseTables d = dense_tables(st);
  ProbArray<Scalar> out = ProbArray<Scalar>::Zero(Eigen::Index{1} << d.l_index.size());
  for (std::uint64_t idx = 0; idx < d.x.size(); ++idx) {
    if ((idx & d.t_mask) != d.t_value) continue;
    std::uint64_t l = 0;
    for (std::size_t b = 0; b < d.l_index.size(); ++b) l |= ((idx >> d.l_index[b]) & 1u) << b;
    out(static_cast<Eigen::Index>(l)) += st.prior[idx] * message_weight(st, d.x[idx], -1);
  }
  normalize_in_place(out);
  return GroupDistribution<Scalar>(std::make_shared<const CellBasis>(st.cell->basis().sub_basis(d.l_index)),
                                   std::move(out), true);
}

template <typename Scalar>
QubitMessage<Scalar> bp_message_update(const CellState<Scalar>& st, int q) {
  const DenseTables d = dense_tables(st);
  if (q < 0 || q >= st.cell->num_qubits()) throw DimensionError("bp_message_update: qubit out of range");
  const QubitMessage<Scalar> own = qubit_marginal(st.prior, static_cast<std::size_t>(q));
  QubitMessage<Scalar> m{ProbArray<Scalar>::Zero(2)};
  for (std::uint64_t idx = 0; idx < d.x.size(); ++idx) {
    if ((idx & d.t_mask) != d.t_value) continue;
    const int bit = static_cast<int>((d.x[idx] >> q) & 1u);
    m.probs(bit) += st.prior[idx] * message_weight(st, d.x[idx], q);
  }
  for (int b = 0; b < 2; ++b) m.probs(b) /= std::max(own.probs(b), Scalar(kProbabilityFloor));
  m.normalize();
  return m;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
LevelState<Scalar> LevelState<Scalar>::from_wall_probs(const WallLattice& lattice, std::vector<std::uint8_t> syndrome,
                                                       const ProbArray<Scalar>& flip_prob) {
  if (flip_prob.size() != lattice.num_walls()) throw DimensionError("one flip probability per wall expected");
  if (static_cast<int>(syndrome.size()) != lattice.num_cubes()) throw DimensionError("one syndrome bit per cube expected");
  const int d = lattice.dims();
  LevelState s{lattice, std::move(syndrome), {}};
  s.joints.resize(1 << d, lattice.num_cubes());
  for (int c = 0; c < lattice.num_cubes(); ++c)
    for (int idx = 0; idx < (1 << d); ++idx) {
      Scalar p(1);
      for (int a = 0; a < d; ++a) {
        const Scalar f = flip_prob(c * d + a);
        p *= ((idx >> a) & 1) ? f : Scalar(1) - f;
      }
      s.joints(idx, c) = p;
    }
  return s;
}

template <typename Scalar>
Scalar LevelState<Scalar>::wall_probability(int cube, int axis) const {
  Scalar one(0), all(0);
  for (Eigen::Index idx = 0; idx < joints.rows(); ++idx) {
    all += joints(idx, cube);
    if ((idx >> axis) & 1) one += joints(idx, cube);
  }
  return all > Scalar(0) ? one / all : Scalar(0);
}

CellPlan::CellPlan(const UnitCellSpec& cell, Orientation orient, const WallLattice& level)
    : cell_(&cell), orient_(orient), level_(level) {
  const int dims = level.dims();
  if (cell.roles() != dims)
    throw ConfigError(cell.name() + " has " + std::to_string(cell.roles()) + " roles but the lattice has " +
                      std::to_string(dims) + " dimensions");
  std::array<bool, 3> used{};
  for (int r = 0; r < dims; ++r) {
    const int a = orient.axis[static_cast<std::size_t>(r)];
    if (a < 0 || a >= dims || used[static_cast<std::size_t>(a)]) throw ConfigError("orientation is not a permutation");
    used[static_cast<std::size_t>(a)] = true;
    extent_[static_cast<std::size_t>(a)] = cell.extent()[static_cast<std::size_t>(r)];
  }
  Coord csize{1, 1, 1};
  for (int a = 0; a < dims; ++a) {
    if (level.size(a) % extent_[static_cast<std::size_t>(a)] != 0)
      throw ConfigError("lattice size " + std::to_string(level.size(a)) + " along axis " + std::to_string(a) +
                        " is not divisible by the " + cell.name() + " extent");
    csize[static_cast<std::size_t>(a)] = level.size(a) / extent_[static_cast<std::size_t>(a)];
  }
  coarse_ = WallLattice(dims, csize);
  final_ = coarse_.num_cubes() == 1;

  auto to_lattice = [&](const Offset& o) {
    Coord c{0, 0, 0};
    for (int r = 0; r < dims; ++r) c[static_cast<std::size_t>(orient.axis[static_cast<std::size_t>(r)])] = o[static_cast<std::size_t>(r)];
    return c;
  };
  std::vector<Offset> block_offsets;
  for (int a = 0; a < cell.extent()[0]; ++a)
    for (int b = 0; b < cell.extent()[1]; ++b)
      for (int c = 0; c < cell.extent()[2]; ++c) {
        block_offsets.push_back({a, b, c});
        block_cubes_.push_back(to_lattice({a, b, c}));
      }

  std::vector<int> var_of(static_cast<std::size_t>(level.num_walls()), -1);
  for (int k = 0; k < num_block_cubes(); ++k)
    for (int a = 0; a < dims; ++a) {
      var_of[static_cast<std::size_t>(level.wall(block_cubes_[static_cast<std::size_t>(k)], a))] = num_vars();
      vars_.push_back({block_cubes_[static_cast<std::size_t>(k)], a, k});
    }
  for (const CellSite& s : cell.sites()) {
    const Coord delta = to_lattice(s.offset);
    const int axis = orient.axis[static_cast<std::size_t>(s.role)];
    int& v = var_of[static_cast<std::size_t>(level.wall(delta, axis))];
    if (v < 0) {
      v = num_vars();
      vars_.push_back({delta, axis, -1});
    }
    site_var_.push_back(v);
  }
  if (num_vars() > 26) throw ConfigError(cell.name() + ": too many distinct walls in one cell");

  auto face_mask = [&](const Coord& cube) {
    std::uint32_t m = 0;
    for (int a = 0; a < dims; ++a) {
      Coord up = cube;
      ++up[static_cast<std::size_t>(a)];
      for (const Coord& c : {cube, up}) {
        const int v = var_of[static_cast<std::size_t>(level.wall(c, a))];
        if (v < 0) throw ConfigError(cell.name() + ": a constrained check has a face outside the cell");
        m ^= std::uint32_t{1} << v;
      }
    }
    return m;
  };
  std::vector<std::uint32_t> check_mask;
  for (const Offset& o : cell.measured_cubes()) checks_.push_back(to_lattice(o));
  if (final_) checks_.push_back(to_lattice(cell.unmeasured_cube()));
  for (const Coord& c : checks_) check_mask.push_back(face_mask(c));

  std::vector<std::uint32_t> current_mask(static_cast<std::size_t>(dims), 0);
  for (int r = 0; r < dims; ++r)
    for (int k = 0; k < num_block_cubes(); ++k)
      if (block_offsets[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] == 0)
        current_mask[static_cast<std::size_t>(r)] ^= std::uint32_t{1}
                                                     << (k * dims + orient.axis[static_cast<std::size_t>(r)]);

  configs_.assign(std::size_t{1} << checks_.size(), {});
  currents_.assign(configs_.size(), {});
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << num_vars()); ++x) {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i < check_mask.size(); ++i)
      key |= static_cast<std::uint32_t>(std::popcount(x & check_mask[i]) & 1) << i;
    std::uint8_t l = 0;
    for (int r = 0; r < dims; ++r)
      l |= static_cast<std::uint8_t>((std::popcount(x & current_mask[static_cast<std::size_t>(r)]) & 1)
                                     << orient.axis[static_cast<std::size_t>(r)]);
    configs_[key].push_back(x);
    currents_[key].push_back(l);
  }

  const int per_chunk = std::max(1, 8 / dims);
  for (int k = 0; k < num_block_cubes(); k += per_chunk) {
    const int n = std::min(per_chunk, num_block_cubes() - k);
    chunks_.push_back({k * dims, n * dims, k, n});
  }
  for (int v = num_block_cubes() * dims; v < num_vars(); v += 8)
    chunks_.push_back({v, std::min(8, num_vars() - v), -1, 0});

  const int slots = num_blocks() * num_vars();
  partner_.assign(static_cast<std::size_t>(slots), -1);
  std::vector<int> first(static_cast<std::size_t>(level.num_walls()), -1);
  std::vector<int> count(static_cast<std::size_t>(level.num_walls()), 0);
  for (int b = 0; b < num_blocks(); ++b)
    for (int v = 0; v < num_vars(); ++v) {
      const auto id = static_cast<std::size_t>(var_wall(b, v));
      const int flat = b * num_vars() + v;
      if (++count[id] > 2) throw ConfigError(cell.name() + ": a wall is shared by more than two cells");
      if (count[id] == 1) {
        first[id] = flat;
      } else {
        partner_[static_cast<std::size_t>(flat)] = first[id];
        partner_[static_cast<std::size_t>(first[id])] = flat;
        ++num_edges_;
      }
    }
}

int CellPlan::block_cube(int b, int k) const {
  Coord c = coarse_.coord(b);
  for (int a = 0; a < 3; ++a)
    c[static_cast<std::size_t>(a)] = c[static_cast<std::size_t>(a)] * extent_[static_cast<std::size_t>(a)] +
                                     block_cubes_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
  return level_.cube(c);
}

int CellPlan::cube_at(int b, const Offset& offset) const {
  Coord c = coarse_.coord(b);
  for (int a = 0; a < 3; ++a) c[static_cast<std::size_t>(a)] *= extent_[static_cast<std::size_t>(a)];
  for (int r = 0; r < level_.dims(); ++r)
    c[static_cast<std::size_t>(orient_.axis[static_cast<std::size_t>(r)])] += offset[static_cast<std::size_t>(r)];
  return level_.cube(c);
}

int CellPlan::var_wall(int b, int v) const {
  Coord c = coarse_.coord(b);
  const Var& var = vars_[static_cast<std::size_t>(v)];
  for (int a = 0; a < 3; ++a)
    c[static_cast<std::size_t>(a)] =
        c[static_cast<std::size_t>(a)] * extent_[static_cast<std::size_t>(a)] + var.delta[static_cast<std::size_t>(a)];
  return level_.wall(c, var.axis);
}

std::uint32_t CellPlan::syndrome_key(int b, const std::vector<std::uint8_t>& syndrome) const {
  const Coord base = coarse_.coord(b);
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < checks_.size(); ++i) {
    Coord c;
    for (int a = 0; a < 3; ++a)
      c[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)] * extent_[static_cast<std::size_t>(a)] +
                                       checks_[i][static_cast<std::size_t>(a)];
    key |= static_cast<std::uint32_t>(syndrome[static_cast<std::size_t>(level_.cube(c))] & 1u) << i;
  }
  return key;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
CellKernel<Scalar>::CellKernel(const CellPlan& plan, const LevelState<Scalar>& state) : plan_(plan), state_(state) {
  const WallLattice& a = plan.level();
  const WallLattice& b = state.lattice;
  if (a.dims() != b.dims() || a.size() != b.size()) throw DimensionError("plan and level state disagree on the lattice");
}

template <typename Scalar>
Scalar CellKernel<Scalar>::prior_one(int block, int v) const {
  const int wall = plan_.var_wall(block, v);
  const int d = plan_.level().dims();
  return state_.wall_probability(wall / d, wall % d);
}

template <typename Scalar>
void CellKernel<Scalar>::evaluate(int block, const Messages<Scalar>& in, ProbArray<Scalar>* currents,
                                  Messages<Scalar>* posterior) const {
  const int nv = plan_.num_vars();
  const int d = plan_.level().dims();
  const int jmask = (1 << d) - 1;

  // Per-variable factors: incoming message, times the owner's marginal for borrowed walls.
  std::array<std::array<Scalar, 2>, 32> f;
  for (int v = 0; v < nv; ++v) {
    const auto slot = static_cast<Eigen::Index>(block * nv + v);
    f[static_cast<std::size_t>(v)] = {in(0, slot), in(1, slot)};
    if (plan_.vars()[static_cast<std::size_t>(v)].owner < 0) {
      const Scalar p1 = prior_one(block, v);
      f[static_cast<std::size_t>(v)][0] *= Scalar(1) - p1;
      f[static_cast<std::size_t>(v)][1] *= p1;
    }
  }

  const auto& chunks = plan_.chunks();
  const std::size_t nc = chunks.size();
  if (nc > 8) throw DimensionError("cell has too many variable chunks");
  std::array<std::uint32_t, 8> mask{}, shift{}, base{};
  std::uint32_t table_len = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    mask[c] = (std::uint32_t{1} << chunks[c].width) - 1;
    shift[c] = static_cast<std::uint32_t>(chunks[c].shift);
    base[c] = table_len;
    table_len += mask[c] + 1;
  }
  std::array<Scalar, 8 * 256> table;
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& ch = chunks[c];
    std::array<int, 8> cubes{};
    for (int j = 0; j < ch.num_cubes; ++j) cubes[static_cast<std::size_t>(j)] = plan_.block_cube(block, ch.first_cube + j);
    for (std::uint32_t u = 0; u <= mask[c]; ++u) {
      Scalar val(1);
      for (int j = 0; j < ch.num_cubes; ++j)
        val *= state_.joints(static_cast<Eigen::Index>((u >> (j * d)) & static_cast<std::uint32_t>(jmask)),
                             cubes[static_cast<std::size_t>(j)]);
      for (int i = 0; i < ch.width; ++i) val *= f[static_cast<std::size_t>(ch.shift + i)][(u >> i) & 1u];
      table[base[c] + u] = val;
    }
  }

  const std::uint32_t key = plan_.syndrome_key(block, state_.syndrome);
  const auto& cfg = plan_.configs(key);
  const auto& cur = plan_.currents(key);
  std::array<Scalar, 8> acc{};
  const bool want_post = posterior != nullptr;
  std::array<Scalar, 8 * 256> hist;
  if (want_post) std::fill_n(hist.begin(), table_len, Scalar(0));
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const std::uint32_t x = cfg[i];
    Scalar w = table[base[0] + (x & mask[0])];
    for (std::size_t c = 1; c < nc; ++c) w *= table[base[c] + ((x >> shift[c]) & mask[c])];
    acc[cur[i]] += w;
    if (want_post)
      for (std::size_t c = 0; c < nc; ++c) hist[base[c] + ((x >> shift[c]) & mask[c])] += w;
  }

  if (currents) {
    currents->resize(1 << d);
    for (int l = 0; l < (1 << d); ++l) (*currents)(l) = acc[static_cast<std::size_t>(l)];
  }
  if (want_post) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& ch = chunks[c];
      for (int i = 0; i < ch.width; ++i) {
        Scalar zero(0), one(0);
        for (std::uint32_t u = 0; u <= mask[c]; ++u) ((u >> i) & 1u ? one : zero) += hist[base[c] + u];
        const auto slot = static_cast<Eigen::Index>(block * nv + ch.shift + i);
        (*posterior)(0, slot) = zero;
        (*posterior)(1, slot) = one;
      }
    }
  }
}

template <typename Scalar>
Messages<Scalar> uniform_messages(const CellPlan& plan) {
  return Messages<Scalar>::Constant(2, plan.num_blocks() * plan.num_vars(), Scalar(0.5));
}

namespace {

template <typename Scalar>
void normalize_message(Messages<Scalar>& m, Eigen::Index slot) {
  auto col = m.col(slot);
  normalize_in_place(col);
}

}  // namespace

template <typename Scalar>
Messages<Scalar> bp_update(const CellPlan& plan, const LevelState<Scalar>& state, const Messages<Scalar>& in) {
  CellKernel<Scalar> kernel(plan, state);
  Messages<Scalar> post(2, in.cols());
  Messages<Scalar> out = uniform_messages<Scalar>(plan);
  const int nv = plan.num_vars();
  for (int b = 0; b < plan.num_blocks(); ++b) {
    kernel.evaluate(b, in, nullptr, &post);
    for (int v = 0; v < nv; ++v) {
      const Eigen::Index slot = b * nv + v;
      if (plan.partner(static_cast<int>(slot)) < 0) continue;
      const Scalar p1 = kernel.prior_one(b, v);
      const Scalar own[2] = {Scalar(1) - p1, p1};
      for (int bit = 0; bit < 2; ++bit)
        out(bit, slot) = post(bit, slot) / std::max(in(bit, slot) * own[bit], Scalar(kProbabilityFloor));
      normalize_message(out, slot);
    }
  }
  return out;
}

template <typename Scalar>
Messages<Scalar> initial_messages(const CellPlan& plan, const LevelState<Scalar>& state, MessageInit mode) {
  const Messages<Scalar> uniform = uniform_messages<Scalar>(plan);
  if (mode == MessageInit::Extrinsic) return bp_update(plan, state, uniform);
  CellKernel<Scalar> kernel(plan, state);
  Messages<Scalar> out = uniform;
  Messages<Scalar> post(2, uniform.cols());
  const int nv = plan.num_vars();
  for (int b = 0; b < plan.num_blocks(); ++b) {
    if (mode == MessageInit::Posterior) kernel.evaluate(b, uniform, nullptr, &post);
    for (int v = 0; v < nv; ++v) {
      const Eigen::Index slot = b * nv + v;
      if (plan.partner(static_cast<int>(slot)) < 0) continue;
      if (mode == MessageInit::Prior) {
        const Scalar p1 = kernel.prior_one(b, v);
        out(0, slot) = Scalar(1) - p1;
        out(1, slot) = p1;
      } else {
        out.col(slot) = post.col(slot);
      }
      normalize_message(out, slot);
    }
  }
  return out;
}

template <typename Scalar>
Messages<Scalar> exchange(const CellPlan& plan, const Messages<Scalar>& out) {
  Messages<Scalar> in = uniform_messages<Scalar>(plan);
  for (Eigen::Index s = 0; s < in.cols(); ++s) {
    const int p = plan.partner(static_cast<int>(s));
    if (p >= 0) in.col(s) = out.col(p);
  }
  return in;
}

template <typename Scalar>
Messages<Scalar> bp_round(const CellPlan& plan, const LevelState<Scalar>& state, const Messages<Scalar>& in) {
  return exchange(plan, bp_update(plan, state, in));
}

template <typename Scalar>
Messages<Scalar> run_bp(const CellPlan& plan, const LevelState<Scalar>& state, const RgOptions& opt) {
  if (opt.bp_rounds <= 0 || plan.num_edges() == 0) return uniform_messages<Scalar>(plan);
  Messages<Scalar> in = exchange(plan, initial_messages(plan, state, opt.init));
  for (int r = 1; r < opt.bp_rounds; ++r) in = bp_round(plan, state, in);
  return in;
}

template <typename Scalar>
LevelState<Scalar> rg_iteration(const LevelState<Scalar>& level, const CellPlan& plan, const RgOptions& opt) {
  const Messages<Scalar> in = run_bp(plan, level, opt);
  CellKernel<Scalar> kernel(plan, level);
  const int d = level.lattice.dims();
  LevelState<Scalar> next{plan.coarse(), std::vector<std::uint8_t>(static_cast<std::size_t>(plan.num_blocks()), 0), {}};
  next.joints.resize(1 << d, plan.num_blocks());
  ProbArray<Scalar> cur;
  for (int b = 0; b < plan.num_blocks(); ++b) {
    kernel.evaluate(b, in, &cur, nullptr);
    normalize_in_place(cur);
    next.joints.col(b) = cur;
    std::uint8_t s = 0;
    for (int k = 0; k < plan.num_block_cubes(); ++k) s ^= level.syndrome[static_cast<std::size_t>(plan.block_cube(b, k))];
    next.syndrome[static_cast<std::size_t>(b)] = s;
  }
  return next;
}

template <typename Scalar>
ProbArray<Scalar> exact_level_classes(const LevelState<Scalar>& level) {
  const WallLattice& lat = level.lattice;
  const int nw = lat.num_walls(), d = lat.dims();
  if (nw > kExactLevelMaxWalls)
    throw PreconditionError("exact level enumeration refused: " + std::to_string(nw) + " walls exceed the bound " +
                            std::to_string(kExactLevelMaxWalls));
  std::vector<std::uint32_t> check(static_cast<std::size_t>(lat.num_cubes()), 0);
  std::uint32_t want = 0;
  std::array<std::uint32_t, 3> cut{};
  for (int c = 0; c < lat.num_cubes(); ++c) {
    const Coord x = lat.coord(c);
    for (int a = 0; a < d; ++a) {
      Coord up = x;
      ++up[static_cast<std::size_t>(a)];
      check[static_cast<std::size_t>(c)] ^= std::uint32_t{1} << lat.wall(x, a);
      check[static_cast<std::size_t>(c)] ^= std::uint32_t{1} << lat.wall(up, a);
      if (x[static_cast<std::size_t>(a)] == 0) cut[static_cast<std::size_t>(a)] |= std::uint32_t{1} << lat.wall(x, a);
    }
    if (level.syndrome[static_cast<std::size_t>(c)]) want |= std::uint32_t{1} << c;
  }
  ProbArray<Scalar> out = ProbArray<Scalar>::Zero(1 << d);
  const std::uint32_t jmask = (1u << d) - 1;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << nw); ++x) {
    std::uint32_t s = 0;
    for (int c = 0; c < lat.num_cubes(); ++c)
      s |= static_cast<std::uint32_t>(std::popcount(x & check[static_cast<std::size_t>(c)]) & 1) << c;
    if (s != want) continue;
    Scalar w(1);
    for (int c = 0; c < lat.num_cubes(); ++c) w *= level.joints((x >> (c * d)) & jmask, c);
    int cls = 0;
    for (int a = 0; a < d; ++a) cls |= (std::popcount(x & cut[static_cast<std::size_t>(a)]) & 1) << a;
    out(cls) += w;
  }
  normalize_in_place(out);
  return out;
}

#define RGDECODE_RG_INSTANTIATE(S)                                                                   \
  template struct CellState<S>;                                                                      \
  template GroupDistribution<S> cell_distribution(const CellState<S>&);                              \
  template QubitMessage<S> bp_message_update(const CellState<S>&, int);                              \
  template struct LevelState<S>;                                                                     \
  template class CellKernel<S>;                                                                      \
  template Messages<S> uniform_messages<S>(const CellPlan&);                                         \
  template Messages<S> initial_messages(const CellPlan&, const LevelState<S>&, MessageInit);         \
  template Messages<S> bp_update(const CellPlan&, const LevelState<S>&, const Messages<S>&);          \
  template Messages<S> exchange(const CellPlan&, const Messages<S>&);                                \
  template Messages<S> bp_round(const CellPlan&, const LevelState<S>&, const Messages<S>&);           \
  template Messages<S> run_bp(const CellPlan&, const LevelState<S>&, const RgOptions&);              \
  template LevelState<S> rg_iteration(const LevelState<S>&, const CellPlan&, const RgOptions&);      \
  template ProbArray<S> exact_level_classes(const LevelState<S>&);
RGDECODE_RG_INSTANTIATE(double)
RGDECODE_RG_INSTANTIATE(long double)
#undef RGDECODE_RG_INSTANTIATE

}  // namespace rgdecode
