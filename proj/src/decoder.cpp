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

#include "rgdecode/decoder.hpp"

#include <sstream>

namespace rgdecode {

namespace {

std::shared_ptr<const UnitCellSpec> shared_builtin(const std::string& name) {
  // Built-ins are static; the empty owner keeps them alive forever.
  return std::shared_ptr<const UnitCellSpec>(std::shared_ptr<void>{}, &builtin_cell(name));
}

std::shared_ptr<const UnitCellSpec> resolve_cell(const std::string& name) {
  for (const auto& b : builtin_cell_names())
    if (b == name) return shared_builtin(name);
  return std::make_shared<const UnitCellSpec>(load_cell_file(name));
}

void halve(Coord& size, int axis, const std::string& schedule) {
  if (size[static_cast<std::size_t>(axis)] % 2 != 0)
    throw ConfigError(schedule + " schedule: size " + std::to_string(size[static_cast<std::size_t>(axis)]) +
                      " along axis " + std::to_string(axis) + " cannot be halved");
  size[static_cast<std::size_t>(axis)] /= 2;
}

bool done(const Coord& size) { return size[0] == 1 && size[1] == 1 && size[2] == 1; }

}  // namespace

Schedule Schedule::parse(const std::string& text) {
  Schedule s;
  s.name_ = text;
  if (text == "cell2x2") {
    s.kind_ = Kind::Cell2x2;
  } else if (text == "cell211") {
    s.kind_ = Kind::Cell211;
  } else if (text == "cell221") {
    s.kind_ = Kind::Cell221;
  } else if (text == "hybrid") {
    s.kind_ = Kind::Hybrid;
  } else {
    s.kind_ = Kind::Explicit;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
      if (item.empty()) continue;
      const auto at = item.find('@');
      if (at == std::string::npos)
        throw ConfigError("unknown schedule '" + text + "' (use cell2x2, cell211, cell221, hybrid or CELL@axes;...)");
      ScheduleStep step{resolve_cell(item.substr(0, at)), {}};
      std::istringstream axes(item.substr(at + 1));
      std::string a;
      int r = 0;
      while (std::getline(axes, a, ',')) {
        if (r >= 3) throw ConfigError("schedule step '" + item + "' lists more than three axes");
        try {
          step.orient.axis[static_cast<std::size_t>(r++)] = std::stoi(a);
        } catch (const std::exception&) {
          throw ConfigError("schedule step '" + item + "': axis '" + a + "' is not an integer");
        }
      }
      if (r != step.cell->roles())
        throw ConfigError("schedule step '" + item + "' needs one axis per role of " + step.cell->name());
      s.explicit_.push_back(std::move(step));
    }
    if (s.explicit_.empty()) throw ConfigError("empty schedule");
  }
  return s;
}

std::vector<ScheduleStep> Schedule::steps(const WallLattice& lattice) const {
  Coord size = lattice.size();
  std::vector<ScheduleStep> out;
  const int dims = lattice.dims();
  auto need_dims = [&](int d) {
    if (dims != d)
      throw ConfigError(name_ + " schedule needs a " + std::to_string(d) + "D lattice, got " + std::to_string(dims) + "D");
  };
  int pointer = 0;
  auto step211 = [&]() {
    for (int t = 0; t < 3; ++t) {
      const int d = (pointer + t) % 3;
      if (size[static_cast<std::size_t>(d)] > 1) {
        out.push_back({shared_builtin("cell211"), {{d, (d + 1) % 3, (d + 2) % 3}}});
        halve(size, d, name_);
        pointer = (d + 1) % 3;
        return;
      }
    }
  };
  static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  int pair = 0;
  auto step221 = [&](bool strict) {
    for (int t = 0; t < (strict ? 1 : 3); ++t) {
      const int* pr = kPairs[(pair + t) % 3];
      if (size[static_cast<std::size_t>(pr[0])] > 1 && size[static_cast<std::size_t>(pr[1])] > 1) {
        out.push_back({shared_builtin("cell221"), {{pr[0], pr[1], 3 - pr[0] - pr[1]}}});
        halve(size, pr[0], name_);
        halve(size, pr[1], name_);
        pair = (pair + t + 1) % 3;
        return true;
      }
    }
    if (strict)
      throw ConfigError("cell221 schedule: lattice " + std::to_string(lattice.size(0)) + "x" +
                        std::to_string(lattice.size(1)) + "x" + std::to_string(lattice.size(2)) +
                        " does not reduce by 2x2x1 cells alone (sizes must be equal powers of four)");
    return false;
  };

  switch (kind_) {
    case Kind::Cell2x2:
      need_dims(2);
      while (!done(size)) {
        out.push_back({shared_builtin("cell2x2"), {{0, 1, 2}}});
        halve(size, 0, name_);
        halve(size, 1, name_);
      }
      break;
    case Kind::Cell211:
      need_dims(3);
      while (!done(size)) step211();
      break;
    case Kind::Cell221:
      need_dims(3);
      while (!done(size)) step221(true);
      break;
    case Kind::Hybrid:
      need_dims(3);
      while (!done(size)) {
        int big = 0;
        for (int a = 0; a < 3; ++a) big += size[static_cast<std::size_t>(a)] > 1;
        if (big < 2 || !step221(false)) step211();
      }
      break;
    case Kind::Explicit:
      for (const auto& s : explicit_) {
        out.push_back(s);
        for (int r = 0; r < s.cell->roles(); ++r)
          if (s.cell->extent()[static_cast<std::size_t>(r)] == 2) halve(size, s.orient.axis[static_cast<std::size_t>(r)], name_);
      }
      if (!done(size)) throw ConfigError("schedule '" + name_ + "' does not reduce the lattice to a single cube");
      break;
  }
  return out;
}

template <typename Scalar>
RgDecoderT<Scalar>::RgDecoderT(const WallLattice& lattice, const Schedule& schedule, RgOptions opt)
    : lattice_(lattice), opt_(opt) {
  WallLattice level = lattice;
  const auto steps = schedule.steps(lattice);
  plans_.reserve(steps.size());
  for (const auto& st : steps) {
    cells_.push_back(st.cell);
    plans_.emplace_back(*st.cell, st.orient, level);
    level = plans_.back().coarse();
  }
  if (plans_.empty() || level.num_cubes() != 1) throw ConfigError("schedule does not end on a single cube");
}

template <typename Scalar>
std::vector<LevelState<Scalar>> RgDecoderT<Scalar>::levels(const std::vector<std::uint8_t>& syndrome,
                                                           const ProbArray<Scalar>& flip_prob) const {
  std::vector<LevelState<Scalar>> out;
  out.push_back(LevelState<Scalar>::from_wall_probs(lattice_, syndrome, flip_prob));
  for (const auto& plan : plans_) out.push_back(rg_iteration(out.back(), plan, opt_));
  return out;
}

template <typename Scalar>
ProbArray<Scalar> RgDecoderT<Scalar>::class_distribution(const std::vector<std::uint8_t>& syndrome,
                                                         const ProbArray<Scalar>& flip_prob) const {
  LevelState<Scalar> s = LevelState<Scalar>::from_wall_probs(lattice_, syndrome, flip_prob);
  for (const auto& plan : plans_) s = rg_iteration(s, plan, opt_);
  return s.joints.col(0);
}

template class RgDecoderT<double>;
template class RgDecoderT<long double>;

std::vector<std::uint8_t> with_cut_parities(const WallLattice& lattice, std::vector<std::uint8_t> base, unsigned cut) {
  const unsigned fix = cut ^ lattice.cut_parities(base);
  for (int a = 0; a < lattice.dims(); ++a)
    if ((fix >> a) & 1u) {
      const auto loop = lattice.logical_loop(a);
      for (std::size_t w = 0; w < base.size(); ++w) base[w] ^= loop[w];
    }
  return base;
}

// ---------------------------------------------------------------------------

Decoder2D::Decoder2D(const Lattice2D& lat, const Schedule& schedule, RgOptions opt)
    : lat_(lat), rg_(sector_lattice(lat), schedule, opt) {}

Decode2DResult Decoder2D::decode(const SyndromeConfig& s, const NoiseChannel& channel, NoiseMode mode) const {
  if (s.ell() != lat_.ell() || channel.size() != lat_.num_qubits())
    throw DimensionError("syndrome or channel does not match the lattice");
  if (!s.even()) throw PreconditionError("syndrome has odd parity");
  SyndromeConfig used = s;
  if (mode == NoiseMode::BitFlip) used.a.setZero();
  const PauliWord t = pure_error(used, lat_);
  const WallLattice wl = sector_lattice(lat_);

  Decode2DResult r{{}, {}, {}, PauliWord(lat_.num_qubits())};
  for (Sector sec : {Sector::X, Sector::Z}) {
    if (sec == Sector::Z && mode == NoiseMode::BitFlip) break;
    ProbArray<double> flip(wl.num_walls());
    for (int c = 0; c < wl.num_cubes(); ++c)
      for (int a = 0; a < 2; ++a) {
        const auto q = sector_qubit(sec, c, a, lat_);
        flip(2 * c + a) = channel.prob(q, PauliLabel::Y) + channel.prob(q, sec == Sector::X ? PauliLabel::X : PauliLabel::Z);
      }
    Eigen::ArrayXd classes = rg_.class_distribution(sector_syndrome(used, sec, lat_), flip);
    const auto cut = static_cast<unsigned>(argmax_first(classes));
    r.decided = r.decided ^ sector_class(cut, sec);
    r.correction *= sector_word(with_cut_parities(wl, sector_walls(t, sec, lat_), cut), sec, lat_);
    (sec == Sector::X ? r.x_classes : r.z_classes) = std::move(classes);
  }
  return r;
}

bool success_2d(const PauliWord& error, const PauliWord& correction, const Lattice2D& lat) {
  return logical_class(error * correction, lat).bits == 0;
}

Decoder3D::Decoder3D(const Lattice3D& lat, const Schedule& schedule, RgOptions opt)
    : lat_(lat), rg_(lat.walls(), schedule, opt) {}

Decode3DResult Decoder3D::decode(const CubicSyndrome& s, double p_space, double p_time) const {
  if (s.ell != lat_.ell() || s.tau != lat_.tau()) throw DimensionError("syndrome does not match the lattice");
  if (s.count() % 2) throw PreconditionError("syndrome has odd parity");
  const WallLattice& wl = lat_.walls();
  ProbArray<double> flip(wl.num_walls());
  for (int c = 0; c < wl.num_cubes(); ++c) {
    flip(3 * c) = flip(3 * c + 1) = p_space;
    flip(3 * c + 2) = p_time;
  }
  Eigen::ArrayXd classes = rg_.class_distribution(s.db, flip);
  // Decide the spatial class with the time winding summed out.
  Eigen::Array4d spatial;
  for (int c = 0; c < 4; ++c) spatial(c) = classes(c) + classes(c + 4);
  const int cls = argmax_first(spatial);
  const bool time_bit = classes(cls + 4) > classes(cls);
  const unsigned cut = static_cast<unsigned>(cls) | (time_bit ? 4u : 0u);
  ErrorHistory corr(lat_, with_cut_parities(wl, pure_history(s, lat_).walls(), cut));
  return {std::move(classes), {static_cast<std::uint8_t>(cls)}, time_bit, std::move(corr)};
}

unsigned residual_directions(const ErrorHistory& error, const ErrorHistory& correction) {
  const ErrorHistory r = error ^ correction;
  if (delta_syndrome(r).count() != 0) throw PreconditionError("correction does not match the error syndrome");
  return error.lattice().walls().cut_parities(r.walls());
}

}  // namespace rgdecode
