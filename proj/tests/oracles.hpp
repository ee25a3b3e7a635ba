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

// Independent reference computations shared by the unit and acceptance tests.

#include <random>
#include <vector>

#include "rgdecode/rg.hpp"

namespace rgdecode::oracle {

/// Random joint table over all 2^n qubit configurations of a cell.
inline std::vector<double> random_joint(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(std::size_t{1} << n);
  double total = 0;
  for (auto& v : p) total += (v = u(rng) * u(rng));
  for (auto& v : p) v /= total;
  return p;
}

/// Re-indexes a qubit-configuration table by exponent vectors of the basis,
/// composing each element from its generators.
inline GroupDistribution<double> exponent_table(const UnitCellSpec& cell, const std::vector<double>& by_config) {
  const CellBasis& basis = cell.basis();
  ProbArray<double> t(Eigen::Index{1} << basis.size());
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(t.size()); ++idx)
    t(static_cast<Eigen::Index>(idx)) = by_config[basis.compose(BitVector::from_index(idx, basis.size())).x().to_index()];
  return GroupDistribution<double>(cell.basis_ptr(), std::move(t), true);
}

/// Current distribution by direct enumeration over every qubit configuration:
/// each one is decomposed in the cell basis, kept when its pure-error
/// exponents equal the syndrome, and binned by its current exponents.
inline Eigen::ArrayXd brute_force_currents(const UnitCellSpec& cell, const std::vector<double>& by_config,
                                           const std::vector<std::uint8_t>& syndrome,
                                           const std::vector<Eigen::Array2d>& messages) {
  const CellBasis& basis = cell.basis();
  const auto t_idx = basis.indices_with(GeneratorTag::T);
  const auto l_idx = basis.indices_with(GeneratorTag::L);
  const int n = cell.num_qubits();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(1 << l_idx.size());
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    PauliWord w(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      if ((x >> q) & 1u) w.set(static_cast<std::size_t>(q), PauliLabel::X);
    const ExponentVector e = basis.decompose(w);
    bool ok = true;
    for (std::size_t i = 0; i < t_idx.size(); ++i) ok = ok && (e.get(t_idx[i]) == static_cast<bool>(syndrome[i]));
    if (!ok) continue;
    double weight = by_config[x];
    for (int q = 0; q < n; ++q) weight *= messages[static_cast<std::size_t>(q)]((x >> q) & 1u);
    int l = 0;
    for (std::size_t i = 0; i < l_idx.size(); ++i) l |= static_cast<int>(e.get(l_idx[i])) << i;
    out(l) += weight;
  }
  return out / out.sum();
}

}  // namespace rgdecode::oracle
