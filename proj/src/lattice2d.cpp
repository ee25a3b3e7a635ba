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

#include "rgdecode/lattice2d.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rgdecode/group_prob.hpp"

namespace rgdecode {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

struct Defect {
  int i, j;
};

std::vector<Defect> defects(const BitMatrix& m) {
  std::vector<Defect> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j)) out.push_back({i, j});
  return out;
}

std::string strip_comment(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
  return line;
}

}  // namespace

Lattice2D::Lattice2D(int ell) : ell_(ell) {
  if (!power_of_two(ell) || ell < 2) throw DimensionError("lattice size must be a power of two >= 2");
}

SyndromeConfig SyndromeConfig::zeros(int ell) {
  return {BitMatrix::Zero(ell, ell), BitMatrix::Zero(ell, ell)};
}

bool SyndromeConfig::even() const {
  return (a.cast<int>().sum() % 2 == 0) && (b.cast<int>().sum() % 2 == 0);
}

NoiseChannel::NoiseChannel(Table rows) : rows_(std::move(rows)) {
  for (Eigen::Index q = 0; q < rows_.rows(); ++q) {
    if ((rows_.row(q) < 0.0).any()) throw ConfigError("channel probabilities must be non-negative");
    if (std::abs(rows_.row(q).sum() - 1.0) > 1e-9) throw ConfigError("channel row does not sum to 1");
  }
}

NoiseChannel NoiseChannel::iid(std::size_t n, double px, double pz, double py) {
  Table t(static_cast<Eigen::Index>(n), 4);
  for (Eigen::Index q = 0; q < t.rows(); ++q) t.row(q) << 1.0 - px - pz - py, px, pz, py;
  return NoiseChannel(std::move(t));
}

bool NoiseChannel::bit_flip_only() const {
  return (rows_.col(2) == 0.0).all() && (rows_.col(3) == 0.0).all();
}

PauliWord stabilizer(StabilizerKind kind, int i, int j, const Lattice2D& lat) {
  PauliWord w(lat.num_qubits());
  if (kind == StabilizerKind::Site) {
    for (auto q : {lat.qubit(i, j, Alpha::H), lat.qubit(i, j, Alpha::V), lat.qubit(i, j - 1, Alpha::H),
                   lat.qubit(i - 1, j, Alpha::V)})
      w.set(q, PauliLabel::X);
  } else {
    for (auto q : {lat.qubit(i, j, Alpha::H), lat.qubit(i, j + 1, Alpha::V), lat.qubit(i + 1, j, Alpha::H),
                   lat.qubit(i, j, Alpha::V)})
      w.set(q, PauliLabel::Z);
  }
  return w;
}

PauliWord bare_logical(int k, const Lattice2D& lat) {
  const int ell = lat.ell();
  PauliWord w(lat.num_qubits());
  for (int t = 0; t < ell; ++t) {
    switch (k) {
      case 0: w.set(lat.qubit(t, ell - 1, Alpha::H), PauliLabel::X); break;
      case 1: w.set(lat.qubit(ell - 1, t, Alpha::V), PauliLabel::X); break;
      case 2: w.set(lat.qubit(0, t, Alpha::H), PauliLabel::Z); break;
      case 3: w.set(lat.qubit(t, 0, Alpha::V), PauliLabel::Z); break;
      default: throw DimensionError("bare logical index must be 0..3");
    }
  }
  return w;
}

PauliWord class_representative(LogicalClass l, const Lattice2D& lat) {
  PauliWord w(lat.num_qubits());
  for (int k = 0; k < 4; ++k)
    if (l.bits >> k & 1) w *= bare_logical(k, lat);
  return w;
}

PauliWord sample_error(const NoiseChannel& channel, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PauliWord w(channel.size());
  for (std::size_t q = 0; q < channel.size(); ++q) {
    const double u = u01(rng);
    double acc = 0.0;
    int label = 3;
    for (int l = 0; l < 3; ++l) {
      acc += channel.prob(q, static_cast<PauliLabel>(l));
      if (u < acc) {
        label = l;
        break;
      }
    }
    w.set(q, static_cast<PauliLabel>(label));
  }
  return w;
}

SyndromeConfig extract_syndrome(const PauliWord& e, const Lattice2D& lat) {
  if (e.size() != lat.num_qubits()) throw DimensionError("word size does not match the lattice");
  const int ell = lat.ell();
  SyndromeConfig s = SyndromeConfig::zeros(ell);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      const auto h = lat.qubit(i, j, Alpha::H);
      const auto v = lat.qubit(i, j, Alpha::V);
      if (e.x().get(h)) {
        s.b(i, j) ^= 1;
        s.b(positive_mod(i - 1, ell), j) ^= 1;
      }
      if (e.x().get(v)) {
        s.b(i, j) ^= 1;
        s.b(i, positive_mod(j - 1, ell)) ^= 1;
      }
      if (e.z().get(h)) {
        s.a(i, j) ^= 1;
        s.a(i, positive_mod(j + 1, ell)) ^= 1;
      }
      if (e.z().get(v)) {
        s.a(i, j) ^= 1;
        s.a(positive_mod(i + 1, ell), j) ^= 1;
      }
    }
  return s;
}

PauliWord pure_error(const SyndromeConfig& s, const Lattice2D& lat) {
  if (s.ell() != lat.ell()) throw DimensionError("syndrome size does not match the lattice");
  if (!s.even()) throw PreconditionError("syndrome has odd parity");
  PauliWord w(lat.num_qubits());
  auto toggle = [&](int i, int j, Alpha a, PauliLabel l) {
    const auto q = lat.qubit(i, j, a);
    w.set(q, restrict(w, q) * l);
  };
  // Plaquette pairs, joined by X strings: along j first, then down in i.
  auto bd = defects(s.b);
  for (std::size_t p = 0; p + 1 < bd.size(); p += 2) {
    int i = bd[p].i, j = bd[p].j;
    const Defect to = bd[p + 1];
    for (; j < to.j; ++j) toggle(i, j + 1, Alpha::V, PauliLabel::X);
    for (; j > to.j; --j) toggle(i, j, Alpha::V, PauliLabel::X);
    for (; i < to.i; ++i) toggle(i + 1, j, Alpha::H, PauliLabel::X);
  }
  auto ad = defects(s.a);
  for (std::size_t p = 0; p + 1 < ad.size(); p += 2) {
    int i = ad[p].i, j = ad[p].j;
    const Defect to = ad[p + 1];
    for (; j < to.j; ++j) toggle(i, j, Alpha::H, PauliLabel::Z);
    for (; j > to.j; --j) toggle(i, j - 1, Alpha::H, PauliLabel::Z);
    for (; i < to.i; ++i) toggle(i, j, Alpha::V, PauliLabel::Z);
  }
  return w;
}

LogicalClass logical_class(const PauliWord& w, const Lattice2D& lat) {
  if (!extract_syndrome(w, lat).trivial()) throw PreconditionError("logical_class needs a closed operator");
  // Each bare logical is detected by its conjugate partner.
  static constexpr int kPartner[4] = {2, 3, 0, 1};
  LogicalClass l;
  for (int k = 0; k < 4; ++k)
    if (!commutes(w, bare_logical(kPartner[k], lat))) l.bits |= static_cast<std::uint8_t>(1u << k);
  return l;
}

Eigen::ArrayXd exact_class_probabilities(const SyndromeConfig& s, const NoiseChannel& channel,
                                         const Lattice2D& lat, NoiseMode mode) {
  const int ell = lat.ell();
  const int cap = mode == NoiseMode::BitFlip ? kExactMaxEllBitFlip : kExactMaxEllFull;
  if (ell > cap) {
    std::ostringstream msg;
    msg << "exact enumeration refused: ell = " << ell << " exceeds the bound ell <= " << cap
        << (mode == NoiseMode::BitFlip ? " for bit-flip noise" : " for full Pauli noise");
    throw PreconditionError(msg.str());
  }
  if (channel.size() != lat.num_qubits()) throw DimensionError("channel size does not match the lattice");
  const std::size_t n = lat.num_qubits();

  SyndromeConfig used = s;
  if (mode == NoiseMode::BitFlip) used.a.setZero();
  const PauliWord t = pure_error(used, lat);

  // Independent generators: all site operators but one, plus (full mode) all
  // plaquettes but one. Each is stored as (qubit, label mask) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::uint8_t>>> gens;
  auto add = [&](StabilizerKind kind, std::uint8_t mask) {
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j) {
        if (i == ell - 1 && j == ell - 1) continue;
        const PauliWord g = stabilizer(kind, i, j, lat);
        std::vector<std::pair<std::size_t, std::uint8_t>> supp;
        for (std::size_t q = 0; q < n; ++q)
          if (restrict(g, q) != PauliLabel::I) supp.emplace_back(q, mask);
        gens.push_back(std::move(supp));
      }
  };
  add(StabilizerKind::Site, 1);
  if (mode == NoiseMode::Full) add(StabilizerKind::Plaquette, 2);

  std::vector<std::array<double, 4>> logp(n);
  double ref = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < 4; ++l) {
      const double p = channel.prob(q, static_cast<PauliLabel>(l));
      logp[q][static_cast<std::size_t>(l)] = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
      best = std::max(best, logp[q][static_cast<std::size_t>(l)]);
    }
    ref += best;
  }

  const int nclass = mode == NoiseMode::BitFlip ? 4 : 16;
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(nclass);
  const std::uint64_t terms = std::uint64_t{1} << gens.size();
  for (int c = 0; c < nclass; ++c) {
    const PauliWord start = t * class_representative({static_cast<std::uint8_t>(c)}, lat);
    std::vector<std::uint8_t> lab(n);
    double logsum = 0.0;
    int zeros = 0;
    for (std::size_t q = 0; q < n; ++q) {
      lab[q] = static_cast<std::uint8_t>(restrict(start, q));
      const double v = logp[q][lab[q]];
      if (std::isinf(v)) ++zeros; else logsum += v;
    }
    double acc = zeros ? 0.0 : std::exp(logsum - ref);
    for (std::uint64_t g = 1; g < terms; ++g) {
      const auto flip = static_cast<std::size_t>(std::countr_zero(g));
      for (auto [q, mask] : gens[flip]) {
        const double before = logp[q][lab[q]];
        if (std::isinf(before)) --zeros; else logsum -= before;
        lab[q] ^= mask;
        const double after = logp[q][lab[q]];
        if (std::isinf(after)) ++zeros; else logsum += after;
      }
      if (!zeros) acc += std::exp(logsum - ref);
    }
    out(c) = acc;
  }
  const double total = out.sum();
  if (!(total > 0.0)) throw ZeroProbabilityError("syndrome has probability zero under this channel");
  return out / total;
}

WallLattice sector_lattice(const Lattice2D& lat) { return WallLattice(2, {lat.ell(), lat.ell(), 1}); }

std::size_t sector_qubit(Sector sec, int cube, int axis, const Lattice2D& lat) {
  const int ell = lat.ell();
  const int ci = cube / ell, cj = cube % ell;
  if (sec == Sector::X) return lat.qubit(ci, cj, axis == 0 ? Alpha::H : Alpha::V);
  return lat.qubit(ell - 1 - ci, ell - 1 - cj, axis == 0 ? Alpha::V : Alpha::H);
}

std::vector<std::uint8_t> sector_walls(const PauliWord& w, Sector sec, const Lattice2D& lat) {
  const int cubes = lat.ell() * lat.ell();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(2 * cubes));
  const BitVector& bits = sec == Sector::X ? w.x() : w.z();
  for (int c = 0; c < cubes; ++c)
    for (int a = 0; a < 2; ++a) out[static_cast<std::size_t>(2 * c + a)] = bits.get(sector_qubit(sec, c, a, lat));
  return out;
}

PauliWord sector_word(const std::vector<std::uint8_t>& walls, Sector sec, const Lattice2D& lat) {
  const int cubes = lat.ell() * lat.ell();
  if (static_cast<int>(walls.size()) != 2 * cubes) throw DimensionError("wall vector has the wrong length");
  PauliWord w(lat.num_qubits());
  for (int c = 0; c < cubes; ++c)
    for (int a = 0; a < 2; ++a)
      if (walls[static_cast<std::size_t>(2 * c + a)])
        w.set(sector_qubit(sec, c, a, lat), sec == Sector::X ? PauliLabel::X : PauliLabel::Z);
  return w;
}

std::vector<std::uint8_t> sector_syndrome(const SyndromeConfig& s, Sector sec, const Lattice2D& lat) {
  const int ell = lat.ell();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(ell * ell));
  for (int ci = 0; ci < ell; ++ci)
    for (int cj = 0; cj < ell; ++cj)
      out[static_cast<std::size_t>(ci * ell + cj)] =
          sec == Sector::X ? s.b(ci, cj) : s.a(ell - 1 - ci, ell - 1 - cj);
  return out;
}

LogicalClass sector_class(unsigned cut_bits, Sector sec) {
  if (sec == Sector::X) return {static_cast<std::uint8_t>(cut_bits & 3u)};
  return {static_cast<std::uint8_t>(((cut_bits & 1u) ? 8u : 0u) | ((cut_bits & 2u) ? 4u : 0u))};
}

void write_syndrome(std::ostream& os, const SyndromeConfig& s) {
  for (int i = 0; i < s.ell(); ++i)
    for (int j = 0; j < s.ell(); ++j)
      if (s.a(i, j)) os << "a " << i << ' ' << j << '\n';
  for (int i = 0; i < s.ell(); ++i)
    for (int j = 0; j < s.ell(); ++j)
      if (s.b(i, j)) os << "b " << i << ' ' << j << '\n';
}

SyndromeConfig read_syndrome(std::istream& is, const Lattice2D& lat) {
  SyndromeConfig s = SyndromeConfig::zeros(lat.ell());
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream in(strip_comment(line));
    std::string kind;
    if (!(in >> kind)) continue;
    int i = 0, j = 0;
    if (!(in >> i >> j) || (kind != "a" && kind != "b") || i < 0 || j < 0 || i >= lat.ell() || j >= lat.ell())
      throw ConfigError("syndrome line " + std::to_string(lineno) + ": expected 'a i j' or 'b i j' in range");
    (kind == "a" ? s.a : s.b)(i, j) ^= 1;
  }
  return s;
}

void write_error(std::ostream& os, const PauliWord& e, const Lattice2D& lat) {
  for (int i = 0; i < lat.ell(); ++i)
    for (int j = 0; j < lat.ell(); ++j)
      for (Alpha a : {Alpha::H, Alpha::V}) {
        const PauliLabel l = restrict(e, lat.qubit(i, j, a));
        if (l != PauliLabel::I) os << to_char(l) << ' ' << i << ' ' << j << ' ' << (a == Alpha::H ? 'H' : 'V') << '\n';
      }
}

PauliWord read_error(std::istream& is, const Lattice2D& lat) {
  PauliWord w(lat.num_qubits());
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream in(strip_comment(line));
    std::string label, dir;
    if (!(in >> label)) continue;
    int i = 0, j = 0;
    const bool ok = (in >> i >> j >> dir) && (label == "X" || label == "Y" || label == "Z") &&
                    (dir == "H" || dir == "V") && i >= 0 && j >= 0 && i < lat.ell() && j < lat.ell();
    if (!ok) throw ConfigError("error line " + std::to_string(lineno) + ": expected 'X|Y|Z i j H|V' in range");
    const PauliLabel l = label == "X" ? PauliLabel::X : label == "Z" ? PauliLabel::Z : PauliLabel::Y;
    const auto q = lat.qubit(i, j, dir == "H" ? Alpha::H : Alpha::V);
    w.set(q, restrict(w, q) * l);
  }
  return w;
}

}  // namespace rgdecode
