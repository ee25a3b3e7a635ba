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

#include "rgdecode/spacetime3d.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace rgdecode {

namespace {

std::string strip_comment(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
  return line;
}

}  // namespace

Lattice3D::Lattice3D(int ell, int tau)
    : ell_(ell), tau_(tau == 0 ? ell : tau), walls_(3, {ell, ell, tau == 0 ? ell : tau}) {
  Lattice2D check(ell);  // validates ell
  if (tau_ < 1) throw DimensionError("tau must be positive");
}

ErrorHistory::ErrorHistory(const Lattice3D& lat)
    : lat_(lat), bits_(static_cast<std::size_t>(lat.walls().num_walls()), 0) {}

ErrorHistory::ErrorHistory(const Lattice3D& lat, std::vector<std::uint8_t> walls) : lat_(lat), bits_(std::move(walls)) {
  if (static_cast<int>(bits_.size()) != lat.walls().num_walls()) throw DimensionError("history has the wrong length");
}

std::size_t ErrorHistory::count() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

ErrorHistory& ErrorHistory::operator^=(const ErrorHistory& o) {
  if (o.bits_.size() != bits_.size()) throw DimensionError("history size mismatch");
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
  return *this;
}

std::size_t CubicSyndrome::count() const {
  std::size_t c = 0;
  for (auto b : db) c += b;
  return c;
}

ErrorHistory sample_history(double p_space, double p_time, const Lattice3D& lat, std::mt19937_64& rng) {
  if (!(p_space >= 0.0 && p_space <= 1.0 && p_time >= 0.0 && p_time <= 1.0))
    throw ConfigError("error probabilities must lie in [0, 1]");
  std::bernoulli_distribution space(p_space), time(p_time);
  ErrorHistory h(lat);
  for (int i = 0; i < lat.ell(); ++i)
    for (int j = 0; j < lat.ell(); ++j)
      for (int k = 0; k < lat.tau(); ++k) {
        if (space(rng)) h.flip_eta(i, j, k, Alpha::H);
        if (space(rng)) h.flip_eta(i, j, k, Alpha::V);
        if (time(rng)) h.flip_mu(i, j, k);
      }
  return h;
}

CubicSyndrome delta_syndrome(const ErrorHistory& h) {
  const Lattice3D& lat = h.lattice();
  const int ell = lat.ell(), tau = lat.tau();
  CubicSyndrome s{ell, tau, std::vector<std::uint8_t>(static_cast<std::size_t>(ell * ell * tau), 0)};
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      for (int k = 0; k < tau; ++k) {
        const bool v = h.mu(i, j, k - 1) ^ h.mu(i, j, k) ^ h.eta(i, j, k, Alpha::H) ^ h.eta(i, j, k, Alpha::V) ^
                       h.eta(i + 1, j, k, Alpha::H) ^ h.eta(i, j + 1, k, Alpha::V);
        s.db[static_cast<std::size_t>((i * ell + j) * tau + k)] = v;
      }
  return s;
}

ErrorHistory pure_history(const CubicSyndrome& s, const Lattice3D& lat) {
  if (s.ell != lat.ell() || s.tau != lat.tau()) throw DimensionError("syndrome size does not match the lattice");
  // Defects sorted by (i, j, k); each pair is joined along T, then V, then H.
  return ErrorHistory(lat, lat.walls().pure_configuration(s.db, {0, 1, 2}, {2, 1, 0}));
}

LogicalClass history_class(const ErrorHistory& h) {
  const Lattice3D& lat = h.lattice();
  const int ell = lat.ell();
  // Accumulated space-like error, judged on the 2D torus.
  Lattice2D lat2(ell);
  PauliWord acc(lat2.num_qubits());
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      for (Alpha a : {Alpha::H, Alpha::V}) {
        bool bit = false;
        for (int k = 0; k < lat.tau(); ++k) bit ^= h.eta(i, j, k, a);
        if (bit) acc.set(lat2.qubit(i, j, a), PauliLabel::X);
      }
  if (delta_syndrome(h).count() != 0) throw PreconditionError("history_class needs a closed history");
  return logical_class(acc, lat2);
}

bool time_winding(const ErrorHistory& h) {
  if (delta_syndrome(h).count() != 0) throw PreconditionError("time_winding needs a closed history");
  return (h.lattice().walls().cut_parities(h.walls()) >> 2) & 1u;
}

bool judge(const ErrorHistory& actual, const ErrorHistory& correction) {
  if (!(delta_syndrome(actual) == delta_syndrome(correction)))
    throw PreconditionError("correction does not reproduce the observed syndrome");
  return history_class(actual ^ correction).bits == 0;
}

void write_history(std::ostream& os, const ErrorHistory& h) {
  const Lattice3D& lat = h.lattice();
  for (int i = 0; i < lat.ell(); ++i)
    for (int j = 0; j < lat.ell(); ++j)
      for (int k = 0; k < lat.tau(); ++k) {
        if (h.eta(i, j, k, Alpha::H)) os << "eta " << i << ' ' << j << ' ' << k << " H\n";
        if (h.eta(i, j, k, Alpha::V)) os << "eta " << i << ' ' << j << ' ' << k << " V\n";
        if (h.mu(i, j, k)) os << "mu " << i << ' ' << j << ' ' << k << '\n';
      }
}

ErrorHistory read_history(std::istream& is, const Lattice3D& lat) {
  ErrorHistory h(lat);
  std::string line;
  int lineno = 0;
  auto in_range = [&](int i, int j, int k) {
    return i >= 0 && j >= 0 && k >= 0 && i < lat.ell() && j < lat.ell() && k < lat.tau();
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream in(strip_comment(line));
    std::string kind, dir;
    if (!(in >> kind)) continue;
    int i = 0, j = 0, k = 0;
    bool ok = static_cast<bool>(in >> i >> j >> k) && in_range(i, j, k);
    if (ok && kind == "eta" && (in >> dir) && (dir == "H" || dir == "V")) {
      h.flip_eta(i, j, k, dir == "H" ? Alpha::H : Alpha::V);
    } else if (ok && kind == "mu") {
      h.flip_mu(i, j, k);
    } else {
      throw ConfigError("history line " + std::to_string(lineno) + ": expected 'eta i j k H|V' or 'mu i j k'");
    }
  }
  return h;
}

void write_cubic_syndrome(std::ostream& os, const CubicSyndrome& s) {
  for (int i = 0; i < s.ell; ++i)
    for (int j = 0; j < s.ell; ++j)
      for (int k = 0; k < s.tau; ++k)
        if (s.at(i, j, k)) os << "db " << i << ' ' << j << ' ' << k << '\n';
}

CubicSyndrome read_cubic_syndrome(std::istream& is, const Lattice3D& lat) {
  CubicSyndrome s{lat.ell(), lat.tau(), std::vector<std::uint8_t>(static_cast<std::size_t>(lat.walls().num_cubes()), 0)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream in(strip_comment(line));
    std::string kind;
    if (!(in >> kind)) continue;
    int i = 0, j = 0, k = 0;
    if (kind != "db" || !(in >> i >> j >> k) || i < 0 || j < 0 || k < 0 || i >= lat.ell() || j >= lat.ell() ||
        k >= lat.tau())
      throw ConfigError("syndrome line " + std::to_string(lineno) + ": expected 'db i j k' in range");
    s.db[static_cast<std::size_t>((i * lat.ell() + j) * lat.tau() + k)] ^= 1;
  }
  return s;
}

}  // namespace rgdecode
