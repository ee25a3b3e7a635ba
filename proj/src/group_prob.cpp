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

#include "rgdecode/group_prob.hpp"

#include <bit>
#include <cstring>

namespace rgdecode {

std::atomic<std::uint64_t>& underflow_resets() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}

bool gf2_invertible(const Gf2Matrix& y) {
  if (y.rows() != y.cols()) return false;
  Gf2Matrix m = y.unaryExpr([](std::uint8_t v) { return static_cast<std::uint8_t>(v & 1u); });
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && !m(p, c)) ++p;
    if (p == n) return false;
    m.row(p).swap(m.row(c));
    for (Eigen::Index r = 0; r < n; ++r)
      if (r != c && m(r, c))
        for (Eigen::Index j = 0; j < n; ++j) m(r, j) ^= m(c, j);
  }
  return true;
}

namespace detail {

std::vector<std::uint8_t> element_labels(const CellBasis& basis, std::size_t q) {
  const std::size_t k = basis.size();
  std::vector<std::uint8_t> gl(k);
  for (std::size_t i = 0; i < k; ++i) gl[i] = static_cast<std::uint8_t>(restrict(basis.generator(i), q));
  std::vector<std::uint8_t> labels(std::size_t{1} << k, 0);
  for (std::size_t idx = 1; idx < labels.size(); ++idx)
    labels[idx] = labels[idx & (idx - 1)] ^ gl[static_cast<std::size_t>(std::countr_zero(idx))];
  return labels;
}

}  // namespace detail

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("truncated table file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void dump_table(const GroupDistribution<double>& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  put_u64(out, d.num_generators());
  put_u64(out, d.basis().hash());
  for (Eigen::Index i = 0; i < d.probs().size(); ++i) put_u64(out, std::bit_cast<std::uint64_t>(d.probs()(i)));
}

GroupDistribution<double> load_table(const std::string& path, std::shared_ptr<const CellBasis> basis) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  const std::uint64_t k = get_u64(in);
  const std::uint64_t h = get_u64(in);
  if (k != basis->size() || h != basis->hash()) throw ConfigError("table " + path + " was written for another basis");
  ProbArray<double> p(static_cast<Eigen::Index>(std::uint64_t{1} << k));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::bit_cast<double>(get_u64(in));
  return GroupDistribution<double>(std::move(basis), std::move(p), false);
}

}  // namespace rgdecode
