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

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <fstream>
#include <memory>
#include <utility>
#include <vector>

#include "rgdecode/pauli.hpp"

namespace rgdecode {

/// Entries are floored to this value before renormalizing.
inline constexpr double kProbabilityFloor = 1e-300;

/// Number of tables that underflowed to zero and were reset to uniform.
std::atomic<std::uint64_t>& underflow_resets();

template <typename Scalar>
using ProbArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// GF(2) matrix; entries are 0 or 1.
using Gf2Matrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Conditioning on an event of probability zero.
struct ZeroProbabilityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Floors, then rescales to unit mass. An all-zero (or non-finite) table is
/// replaced by the uniform one and counted in underflow_resets().
template <typename Derived>
void normalize_in_place(Eigen::ArrayBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Scalar total = a.sum();
  if (!(total > Scalar(0)) || !std::isfinite(static_cast<double>(total))) {
    a.setConstant(Scalar(1) / Scalar(a.size()));
    underflow_resets().fetch_add(1, std::memory_order_relaxed);
    return;
  }
  a = a.max(Scalar(kProbabilityFloor));
  a /= a.sum();
}

/// Probability of each single-qubit Pauli ({I, X} in X-only mode, else {I, X, Z, Y}).
template <typename Scalar = double>
struct QubitMessage {
  ProbArray<Scalar> probs;

  static QubitMessage uniform(int alphabet) {
    return {ProbArray<Scalar>::Constant(alphabet, Scalar(1) / Scalar(alphabet))};
  }
  [[nodiscard]] Scalar operator[](PauliLabel l) const { return probs(static_cast<int>(l)); }
  void normalize() { normalize_in_place(probs); }
};

/// Dense probability table over a Pauli subgroup. Entry i belongs to the
/// element prod_j Q_j^{bit j of i} (little-endian in generator order).
template <typename Scalar = double>
class GroupDistribution {
 public:
  GroupDistribution() = default;
  GroupDistribution(std::shared_ptr<const CellBasis> basis, ProbArray<Scalar> probs, bool normalized = false)
      : basis_(std::move(basis)), probs_(std::move(probs)), normalized_(normalized) {
    if (!basis_) throw DimensionError("distribution needs a basis");
    if (basis_->size() > 30) throw DimensionError("table over more than 30 generators is not supported");
    if (probs_.size() != (Eigen::Index{1} << basis_->size()))
      throw DimensionError("table length must be 2^k for a k-generator basis");
    if ((probs_ < Scalar(0)).any()) throw DimensionError("negative probability");
  }

  static GroupDistribution uniform(std::shared_ptr<const CellBasis> basis) {
    const Eigen::Index len = Eigen::Index{1} << basis->size();
    return GroupDistribution(std::move(basis), ProbArray<Scalar>::Constant(len, Scalar(1) / Scalar(len)), true);
  }

  [[nodiscard]] const CellBasis& basis() const { return *basis_; }
  [[nodiscard]] const std::shared_ptr<const CellBasis>& basis_ptr() const { return basis_; }
  [[nodiscard]] const ProbArray<Scalar>& probs() const { return probs_; }
  [[nodiscard]] ProbArray<Scalar>& probs() { return probs_; }
  [[nodiscard]] bool normalized() const { return normalized_; }
  [[nodiscard]] std::size_t num_generators() const { return basis_->size(); }
  [[nodiscard]] Scalar operator[](std::uint64_t idx) const { return probs_(static_cast<Eigen::Index>(idx)); }
  [[nodiscard]] Scalar probability(const ExponentVector& e) const { return (*this)[e.to_index()]; }
  [[nodiscard]] Scalar total() const { return probs_.sum(); }

  GroupDistribution& normalize() {
    normalize_in_place(probs_);
    normalized_ = true;
    return *this;
  }

 private:
  std::shared_ptr<const CellBasis> basis_;
  ProbArray<Scalar> probs_;
  bool normalized_ = false;
};

template <typename Scalar>
GroupDistribution<Scalar> marginal(const GroupDistribution<Scalar>& d, const std::vector<std::size_t>& subset) {
  const std::size_t k = d.num_generators();
  std::vector<bool> seen(k, false);
  for (auto g : subset) {
    if (g >= k) throw DimensionError("marginal: generator index out of range");
    if (seen[g]) throw DimensionError("marginal: repeated generator index");
    seen[g] = true;
  }
  ProbArray<Scalar> out = ProbArray<Scalar>::Zero(Eigen::Index{1} << subset.size());
  const auto& p = d.probs();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    std::uint64_t j = 0;
    for (std::size_t b = 0; b < subset.size(); ++b) j |= ((static_cast<std::uint64_t>(i) >> subset[b]) & 1u) << b;
    out(static_cast<Eigen::Index>(j)) += p(i);
  }
  return GroupDistribution<Scalar>(std::make_shared<const CellBasis>(d.basis().sub_basis(subset)), std::move(out),
                                   d.normalized());
}

/// Slice consistent with the given generator assignments, renormalized. The
/// table keeps its basis; inconsistent entries become zero.
template <typename Scalar>
GroupDistribution<Scalar> conditional(const GroupDistribution<Scalar>& d,
                                      const std::vector<std::pair<std::size_t, bool>>& given) {
  std::uint64_t mask = 0, value = 0;
  for (auto [g, v] : given) {
    if (g >= d.num_generators()) throw DimensionError("conditional: generator index out of range");
    mask |= std::uint64_t{1} << g;
    if (v) value |= std::uint64_t{1} << g;
  }
  ProbArray<Scalar> out = d.probs();
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if ((static_cast<std::uint64_t>(i) & mask) != value) out(i) = Scalar(0);
  const Scalar mass = out.sum();
  if (!(mass > Scalar(0))) throw ZeroProbabilityError("conditioning on an event of probability zero");
  out /= mass;
  return GroupDistribution<Scalar>(d.basis_ptr(), std::move(out), true);
}

bool gf2_invertible(const Gf2Matrix& y);

/// Re-expresses `d` in `new_basis`, where new generator i is prod_j Q_j^{y(i,j)}.
template <typename Scalar>
GroupDistribution<Scalar> change_basis(const GroupDistribution<Scalar>& d, std::shared_ptr<const CellBasis> new_basis,
                                       const Gf2Matrix& y) {
  const std::size_t k = d.num_generators();
  if (static_cast<std::size_t>(y.rows()) != k || static_cast<std::size_t>(y.cols()) != k ||
      new_basis->size() != k)
    throw DimensionError("change_basis: y must be k x k with k the basis size");
  if (!gf2_invertible(y)) throw DimensionError("change_basis: y is singular over GF(2)");
  for (std::size_t i = 0; i < k; ++i) {
    ExponentVector row(k);
    for (std::size_t j = 0; j < k; ++j) row.set(j, y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) & 1u);
    if (!(d.basis().compose(row) == new_basis->generator(i)))
      throw DimensionError("change_basis: new generator " + std::to_string(i) + " does not match y");
  }
  // x = z^T y: the old exponent vector is the XOR of the rows selected by z.
  std::vector<std::uint64_t> rows(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) & 1u) rows[i] |= std::uint64_t{1} << j;
  ProbArray<Scalar> out(d.probs().size());
  for (Eigen::Index z = 0; z < out.size(); ++z) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((static_cast<std::uint64_t>(z) >> i) & 1u) x ^= rows[i];
    out(z) = d[x];
  }
  return GroupDistribution<Scalar>(std::move(new_basis), std::move(out), d.normalized());
}

namespace detail {
/// Restriction of every group element to qubit q, by table index.
std::vector<std::uint8_t> element_labels(const CellBasis& basis, std::size_t q);
}  // namespace detail

template <typename Scalar>
QubitMessage<Scalar> qubit_marginal(const GroupDistribution<Scalar>& d, std::size_t q) {
  if (q >= d.basis().num_qubits()) throw DimensionError("qubit_marginal: qubit index out of range");
  const auto labels = detail::element_labels(d.basis(), q);
  const int alphabet = d.basis().x_only() ? 2 : 4;
  QubitMessage<Scalar> m{ProbArray<Scalar>::Zero(alphabet)};
  for (Eigen::Index i = 0; i < d.probs().size(); ++i) m.probs(labels[static_cast<std::size_t>(i)]) += d.probs()(i);
  return m;
}

/// Independent per-qubit channel: one table per qubit, {I,X} for X-only bases or {I,X,Z,Y}.
template <typename Scalar>
GroupDistribution<Scalar> from_channel(const std::vector<ProbArray<Scalar>>& channel,
                                       std::shared_ptr<const CellBasis> basis) {
  const std::size_t n = basis->num_qubits();
  if (channel.size() != n) throw DimensionError("from_channel: one table per qubit required");
  if (!basis->complete()) throw DimensionError("from_channel: basis does not span the cell group");
  const int alphabet = basis->x_only() ? 2 : 4;
  for (const auto& c : channel)
    if (c.size() != alphabet) throw DimensionError("from_channel: channel alphabet does not match the basis");
  const std::size_t k = basis->size();
  // Walk elements in index order, building each word from a smaller index.
  std::vector<std::uint64_t> gx(k, 0), gz(k, 0);
  if (n > 64) throw DimensionError("from_channel: cells larger than 64 qubits are not supported");
  for (std::size_t i = 0; i < k; ++i) {
    gx[i] = basis->generator(i).x().to_index();
    gz[i] = basis->generator(i).z().to_index();
  }
  const std::uint64_t len = std::uint64_t{1} << k;
  std::vector<std::uint64_t> wx(len, 0), wz(len, 0);
  ProbArray<Scalar> out(static_cast<Eigen::Index>(len));
  for (std::uint64_t idx = 0; idx < len; ++idx) {
    if (idx) {
      const int low = std::countr_zero(idx);
      const std::uint64_t prev = idx & (idx - 1);
      wx[idx] = wx[prev] ^ gx[static_cast<std::size_t>(low)];
      wz[idx] = wz[prev] ^ gz[static_cast<std::size_t>(low)];
    }
    Scalar p(1);
    for (std::size_t q = 0; q < n; ++q) {
      const int l = static_cast<int>((wx[idx] >> q) & 1u) | static_cast<int>(((wz[idx] >> q) & 1u) << 1);
      p *= channel[q](l);
    }
    out(static_cast<Eigen::Index>(idx)) = p;
  }
  return GroupDistribution<Scalar>(std::move(basis), std::move(out), false);
}

/// Binary debug dump: u64 k, u64 basis hash, then 2^k little-endian doubles.
void dump_table(const GroupDistribution<double>& d, const std::string& path);
GroupDistribution<double> load_table(const std::string& path, std::shared_ptr<const CellBasis> basis);

}  // namespace rgdecode
