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

#include "rgdecode/cells.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace rgdecode {

namespace {

// 2D cell over the plaquettes NW (0,0), NE (0,1), SW (1,0), SE (1,1); role 0
// is the row direction (H qubits), role 1 the column direction (V qubits).
constexpr const char* kCell2x2 = R"(# 2x2 cell, flux sector
roles 2
extent 2 2
site 0 0 0 0
site 1 0 0 1
site 2 0 1 0
site 3 0 1 1
site 4 1 0 0
site 5 1 0 1
site 6 1 1 0
site 7 1 1 1
site 8 -1 1 1
site 9 1 -1 0
site 10 0 2 1
site 11 2 0 0
qubits 12
S S0: X0 X2 X3 X8
S S1: X1 X4 X5 X9
S S2: X3 X4 X6 X7
T T3: X4 X7
T T4: X6
T T5: X7
E E0: X6 X10
E E1: X7 X11
E E4: X8
E E5: X9
L Xbar0: X2 X6
L Xbar1: X5 X7
C Z0 Z1 Z3 Z4
C Z2 Z3 Z6 Z10
C Z4 Z5 Z7 Z11
)";

constexpr const char* kCell2x2Full = R"(qubits 12
S S0: X0 X2 X3 X8
S S1: X1 X4 X5 X9
S S2: X3 X4 X6 X7
S S3: Z0 Z1 Z3 Z4
S S4: Z2 Z3 Z6 Z10
S S5: Z4 Z5 Z7 Z11
T T0: Z0
T T1: Z1
T T2: Z0 Z3
T T3: X4 X7
T T4: X6
T T5: X7
E E0: X6 X10
E E1: X7 X11
E E2: Z0 Z8
E E3: Z1 Z9
E E4: X8
E E5: X9
E E6: Z10
E E7: Z11
L Xbar0: X2 X6
L Xbar1: X5 X7
L Zbar0: Z0 Z2
L Zbar1: Z1 Z5
)";

// Roles (d, e, f): d is renormalized. Cube M = (0,0,0) is measured, U = (1,0,0) is not.
constexpr const char* kCell211 = R"(# 2x1x1 cell
roles 3
extent 2 1 1
site 0 0 0 0 0
site 1 0 0 0 1
site 2 0 0 0 2
site 3 1 0 0 0
site 4 1 0 0 1
site 5 1 0 0 2
site 6 0 1 0 1
site 7 0 0 1 2
qubits 8
S S0: X1 X3 X4
S S1: X2 X3 X5
T T0: X3
E E0: X3 X6
E E1: X3 X7
L L0: X0 X3
L L1: X4
L L2: X5
C Z0 Z1 Z2 Z3 Z6 Z7
)";

// Roles (d, e, f): d and e are renormalized. Cubes A = (0,0,0), B = (0,1,0),
// C = (1,0,0) are measured; U = (1,1,0) is not.
constexpr const char* kCell221 = R"(# 2x2x1 cell
roles 3
extent 2 2 1
site 0 0 0 0 0
site 1 0 0 0 2
site 2 0 0 0 1
site 3 0 1 0 0
site 4 0 1 0 2
site 5 0 1 0 1
site 6 1 0 0 0
site 7 1 0 0 2
site 8 1 0 0 1
site 9 1 1 0 0
site 10 1 1 0 2
site 11 1 1 0 1
site 12 0 2 0 1
site 13 2 0 0 0
site 14 0 0 1 2
site 15 0 1 1 2
site 16 1 0 1 2
qubits 17
S S0: X0 X3 X5
S S1: X5 X6 X9 X11
S S2: X2 X6 X8
S S3: X1 X4 X5
S S4: X7 X10 X11
S S5: X1 X6 X7
T T0: X5 X9
T T1: X9
T T2: X11
E E0: X9 X12
E E1: X11 X13
E E2: X5 X9 X14
E E3: X9 X15
E E4: X11 X16
L L0: X3 X9
L L1: X10
L L2: X8 X11
C Z0 Z1 Z2 Z5 Z6 Z14
C Z3 Z4 Z5 Z9 Z12 Z15
C Z6 Z7 Z8 Z11 Z13 Z16
)";

std::uint32_t mask_of(const std::vector<int>& qubits) {
  std::uint32_t m = 0;
  for (int q : qubits) m ^= std::uint32_t{1} << q;
  return m;
}

}  // namespace

UnitCellSpec::UnitCellSpec(std::string name, int roles, Offset extent, std::vector<CellSite> sites, CellBasis basis)
    : name_(std::move(name)), roles_(roles), extent_(extent), sites_(std::move(sites)),
      basis_(std::make_shared<const CellBasis>(std::move(basis))) {
  if (roles_ < 1 || roles_ > 3) throw ConfigError(name_ + ": a cell has 1 to 3 roles");
  for (int r = 0; r < 3; ++r) {
    if (r >= roles_ && extent_[r] != 1) throw ConfigError(name_ + ": unused role must have extent 1");
    if (extent_[r] != 1 && extent_[r] != 2) throw ConfigError(name_ + ": extents must be 1 or 2");
  }
  const int n = num_qubits();
  if (n == 0 || n > 30) throw ConfigError(name_ + ": cells need 1 to 30 qubits");
  if (static_cast<int>(basis_->num_qubits()) != n)
    throw ConfigError(name_ + ": basis acts on " + std::to_string(basis_->num_qubits()) + " qubits but " +
                      std::to_string(n) + " sites are declared");
  if (!basis_->x_only() || !basis_->complete())
    throw ConfigError(name_ + ": the decoder needs a complete X-only basis");
  basis_->validate();
  for (int q = 0; q < n; ++q) {
    const auto& s = sites_[static_cast<std::size_t>(q)];
    if (s.role < 0 || s.role >= roles_) throw ConfigError(name_ + ": site role out of range");
    for (int r = roles_; r < 3; ++r)
      if (s.offset[r] != 0) throw ConfigError(name_ + ": offset along an unused role");
    for (int p = 0; p < q; ++p) {
      const auto& o = sites_[static_cast<std::size_t>(p)];
      if (o.offset == s.offset && o.role == s.role) throw ConfigError(name_ + ": two qubits on one wall");
    }
  }

  // Dual functionals: exponent r of a configuration x is parity(x & dual[r]).
  std::vector<std::uint32_t> dual(basis_->size(), 0);
  for (int q = 0; q < n; ++q) {
    const ExponentVector e = basis_->decompose(PauliWord::single(static_cast<std::size_t>(n), static_cast<std::size_t>(q),
                                                                 PauliLabel::X));
    for (std::size_t r = 0; r < basis_->size(); ++r)
      if (e.get(r)) dual[r] |= std::uint32_t{1} << q;
  }

  unmeasured_ = {extent_[0] - 1, extent_[1] - 1, extent_[2] - 1};
  std::vector<Offset> measured;
  for (int a = 0; a < extent_[0]; ++a)
    for (int b = 0; b < extent_[1]; ++b)
      for (int c = 0; c < extent_[2]; ++c)
        if (Offset{a, b, c} != unmeasured_) measured.push_back({a, b, c});

  for (auto i : basis_->indices_with(GeneratorTag::T)) {
    auto it = std::find_if(measured.begin(), measured.end(),
                           [&](const Offset& o) { return mask_of(faces_of(o)) == dual[i]; });
    if (it == measured.end())
      throw ConfigError(name_ + ": pure error " + basis_->name(i) + " does not pair with a measured cube");
    if (std::find(t_cube_.begin(), t_cube_.end(), *it) != t_cube_.end())
      throw ConfigError(name_ + ": two pure errors pair with the same cube");
    t_cube_.push_back(*it);
    t_dual_.push_back(dual[i]);
  }
  if (t_cube_.size() != measured.size()) throw ConfigError(name_ + ": every measured cube needs a pure error");

  for (auto i : basis_->indices_with(GeneratorTag::L)) {
    int found = -1;
    for (int r = 0; r < roles_; ++r) {
      std::vector<int> wall;
      for (int q = 0; q < n; ++q) {
        const auto& s = sites_[static_cast<std::size_t>(q)];
        bool inside = s.role == r && s.offset[r] == 0;
        for (int k = 0; k < 3 && inside; ++k)
          if (k != r) inside = s.offset[k] >= 0 && s.offset[k] < extent_[k];
        if (inside) wall.push_back(q);
      }
      if (mask_of(wall) == dual[i]) found = r;
    }
    if (found < 0) throw ConfigError(name_ + ": current " + basis_->name(i) + " is not a wall of the block");
    if (std::find(l_role_.begin(), l_role_.end(), found) != l_role_.end())
      throw ConfigError(name_ + ": two currents measure the same wall");
    l_role_.push_back(found);
    l_dual_.push_back(dual[i]);
  }
  if (static_cast<int>(l_role_.size()) != roles_) throw ConfigError(name_ + ": one current per role required");

  // Every block cube owns its low walls; the cell must hold them all.
  for (int a = 0; a < extent_[0]; ++a)
    for (int b = 0; b < extent_[1]; ++b)
      for (int c = 0; c < extent_[2]; ++c)
        for (int r = 0; r < roles_; ++r)
          if (find_site({a, b, c}, r) < 0) throw ConfigError(name_ + ": a block cube's low wall is missing");

  for (int q = 0; q < n; ++q) {
    const auto& s = sites_[static_cast<std::size_t>(q)];
    for (int p = 0; p < n; ++p) {
      const auto& o = sites_[static_cast<std::size_t>(p)];
      if (o.role != s.role) continue;
      Offset shift{};
      bool ok = true;
      for (int k = 0; k < 3; ++k) {
        const int d = s.offset[k] - o.offset[k];
        if (d % extent_[k] != 0) ok = false;
        shift[k] = d / extent_[k];
      }
      if (ok && shift != Offset{0, 0, 0}) shared_.push_back({q, shift, p});
    }
  }
}

std::vector<int> UnitCellSpec::renormalized_roles() const {
  std::vector<int> r;
  for (int k = 0; k < roles_; ++k)
    if (extent_[k] == 2) r.push_back(k);
  return r;
}

int UnitCellSpec::find_site(const Offset& offset, int role) const {
  for (std::size_t q = 0; q < sites_.size(); ++q)
    if (sites_[q].offset == offset && sites_[q].role == role) return static_cast<int>(q);
  return -1;
}

std::vector<int> UnitCellSpec::faces_of(const Offset& offset) const {
  std::vector<int> faces;
  for (int r = 0; r < roles_; ++r) {
    Offset up = offset;
    up[r] += 1;
    for (const Offset& o : {offset, up}) {
      const int q = find_site(o, r);
      if (q < 0)
        throw ConfigError(name_ + ": face of cube (" + std::to_string(offset[0]) + "," + std::to_string(offset[1]) +
                          "," + std::to_string(offset[2]) + ") is not in the cell");
      faces.push_back(q);
    }
  }
  return faces;
}

UnitCellSpec parse_cell_file(const std::string& name, const std::string& text) {
  int roles = 0;
  Offset extent{1, 1, 1};
  std::map<int, CellSite> sites;
  std::string rest;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "roles") {
      ls >> roles;
    } else if (head == "extent") {
      for (int r = 0; r < roles; ++r)
        if (!(ls >> extent[r])) throw ConfigError(name + ": extent needs one value per role");
    } else if (head == "site") {
      int q = 0;
      CellSite s;
      ls >> q;
      for (int r = 0; r < roles; ++r) ls >> s.offset[r];
      if (!(ls >> s.role)) throw ConfigError(name + ": malformed site line '" + raw + "'");
      if (!sites.emplace(q, s).second) throw ConfigError(name + ": site " + std::to_string(q) + " declared twice");
    } else {
      rest += raw;
      rest += '\n';
    }
  }
  if (roles == 0) throw ConfigError(name + ": missing 'roles' line");
  std::vector<CellSite> list;
  for (int q = 0; q < static_cast<int>(sites.size()); ++q) {
    auto it = sites.find(q);
    if (it == sites.end()) throw ConfigError(name + ": site " + std::to_string(q) + " missing");
    list.push_back(it->second);
  }
  return UnitCellSpec(name, roles, extent, std::move(list), CellBasis::parse(rest));
}

UnitCellSpec load_cell_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open cell file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto slash = path.find_last_of('/');
  return parse_cell_file(slash == std::string::npos ? path : path.substr(slash + 1), ss.str());
}

std::string builtin_cell_text(const std::string& name) {
  if (name == "cell2x2") return kCell2x2;
  if (name == "cell211") return kCell211;
  if (name == "cell221") return kCell221;
  throw ConfigError("unknown cell '" + name + "' (built-ins: cell2x2, cell211, cell221)");
}

const UnitCellSpec& builtin_cell(const std::string& name) {
  static const UnitCellSpec c2x2 = parse_cell_file("cell2x2", kCell2x2);
  static const UnitCellSpec c211 = parse_cell_file("cell211", kCell211);
  static const UnitCellSpec c221 = parse_cell_file("cell221", kCell221);
  if (name == "cell2x2") return c2x2;
  if (name == "cell211") return c211;
  if (name == "cell221") return c221;
  throw ConfigError("unknown cell '" + name + "' (built-ins: cell2x2, cell211, cell221)");
}

std::vector<std::string> builtin_cell_names() { return {"cell2x2", "cell211", "cell221"}; }

const CellBasis& cell2x2_full_basis() {
  static const CellBasis b = [] {
    CellBasis basis = CellBasis::parse(kCell2x2Full);
    basis.validate();
    return basis;
  }();
  return b;
}

}  // namespace rgdecode
