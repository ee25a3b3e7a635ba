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

#include <doctest.h>

#include <set>
#include <sstream>

#include "rgdecode/spacetime3d.hpp"

using namespace rgdecode;

namespace {

using Cube = std::array<int, 3>;

std::set<Cube> defects(const CubicSyndrome& s) {
  std::set<Cube> out;
  for (int i = 0; i < s.ell; ++i)
    for (int j = 0; j < s.ell; ++j)
      for (int k = 0; k < s.tau; ++k)
        if (s.at(i, j, k)) out.insert({i, j, k});
  return out;
}

ErrorHistory random_history(const Lattice3D& lat, std::mt19937_64& rng) {
  std::vector<std::uint8_t> w(static_cast<std::size_t>(lat.walls().num_walls()));
  for (auto& b : w) b = rng() & 1;
  return ErrorHistory(lat, std::move(w));
}

ErrorHistory cube_stabilizer(const Lattice3D& lat, int i, int j, int k) {
  // Four faces around a time-like plaquette: two eta_H at k, k+1 and two mu.
  ErrorHistory h(lat);
  h.flip_eta(i, j, k, Alpha::H);
  h.flip_eta(i, j, k + 1, Alpha::H);
  h.flip_mu(i, j, k);
  h.flip_mu(i - 1, j, k);
  return h;
}

}  // namespace

TEST_CASE("single faults excite the expected pair of cubes") {
  Lattice3D lat(4, 4);
  SUBCASE("measurement fault") {
    ErrorHistory h(lat);
    h.flip_mu(1, 2, 3);
    CHECK(defects(delta_syndrome(h)) == std::set<Cube>{{1, 2, 3}, {1, 2, 0}});
  }
  SUBCASE("space-like faults") {
    ErrorHistory h(lat);
    h.flip_eta(2, 1, 3, Alpha::H);
    CHECK(defects(delta_syndrome(h)) == std::set<Cube>{{2, 1, 3}, {1, 1, 3}});
    ErrorHistory v(lat);
    v.flip_eta(0, 0, 1, Alpha::V);
    CHECK(defects(delta_syndrome(v)) == std::set<Cube>{{0, 0, 1}, {0, 3, 1}});
  }
  CHECK(delta_syndrome(ErrorHistory(lat)).count() == 0);
}

TEST_CASE("every single bit excites exactly two cubes at ell = tau = 4") {
  Lattice3D lat(4, 4);
  for (int w = 0; w < lat.walls().num_walls(); ++w) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(lat.walls().num_walls()), 0);
    bits[static_cast<std::size_t>(w)] = 1;
    const auto s = delta_syndrome(ErrorHistory(lat, bits));
    CHECK(s.count() == 2);
    CHECK(s.db == lat.walls().syndrome(bits));
  }
}

TEST_CASE("additivity, parity and the cube stabilizer") {
  Lattice3D lat(4, 6);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto h1 = random_history(lat, rng), h2 = random_history(lat, rng);
    auto s = delta_syndrome(h1);
    const auto s2 = delta_syndrome(h2);
    for (std::size_t c = 0; c < s.db.size(); ++c) s.db[c] ^= s2.db[c];
    CHECK(delta_syndrome(h1 ^ h2) == s);
    CHECK(s.count() % 2 == 0);
  }
  CHECK(delta_syndrome(cube_stabilizer(lat, 1, 2, 3)).count() == 0);
  CHECK(history_class(cube_stabilizer(lat, 0, 0, 5)).bits == 0);
}

TEST_CASE("sampling") {
  Lattice3D lat(8);
  std::mt19937_64 rng(99);
  CHECK(sample_history(0.0, lat, rng).count() == 0);
  CHECK(sample_history(1.0, lat, rng).count() == static_cast<std::size_t>(lat.walls().num_walls()));
  const double p = 0.02;
  const int reps = 50;
  std::size_t hits = 0;
  for (int r = 0; r < reps; ++r) hits += sample_history(p, lat, rng).count();
  const double n = double(reps) * lat.walls().num_walls();
  CHECK(std::abs(double(hits) - n * p) < 3 * std::sqrt(n * p * (1 - p)));
}

TEST_CASE("pure history reproduces the syndrome") {
  Lattice3D lat(8, 8);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto s = delta_syndrome(sample_history(0.05, lat, rng));
    const auto h = pure_history(s, lat);
    CHECK(delta_syndrome(h) == s);
    CHECK(pure_history(s, lat) == h);
  }
  CubicSyndrome odd{8, 8, std::vector<std::uint8_t>(512, 0)};
  odd.db[3] = 1;
  CHECK_THROWS_AS(pure_history(odd, lat), PreconditionError);
}

TEST_CASE("classes and judgement") {
  Lattice3D lat(4, 4);
  ErrorHistory loop(lat);
  for (int i = 0; i < 4; ++i) loop.flip_eta(i, 2, 1, Alpha::H);
  CHECK(delta_syndrome(loop).count() == 0);
  CHECK(history_class(loop).bits == 1);

  ErrorHistory column(lat);
  for (int k = 0; k < 4; ++k) column.flip_mu(3, 1, k);
  CHECK(delta_syndrome(column).count() == 0);
  CHECK(history_class(column).bits == 0);
  CHECK(time_winding(column));

  std::mt19937_64 rng(6);
  const auto e = sample_history(0.05, lat, rng);
  CHECK(history_class(e ^ e).bits == 0);
  CHECK(judge(e, e));
  CHECK(judge(e, e ^ cube_stabilizer(lat, 2, 2, 2)));
  CHECK(judge(e, e ^ column));
  CHECK_FALSE(judge(e, e ^ loop));
  ErrorHistory open(lat);
  open.flip_mu(0, 0, 0);
  CHECK_THROWS_AS(history_class(open), PreconditionError);
  CHECK_THROWS_AS(judge(e, e ^ open), PreconditionError);
}

TEST_CASE("file round-trips") {
  Lattice3D lat(4, 3);
  std::mt19937_64 rng(1);
  const auto h = sample_history(0.2, lat, rng);
  std::stringstream ss;
  write_history(ss, h);
  CHECK(read_history(ss, lat) == h);
  const auto s = delta_syndrome(h);
  std::stringstream cs;
  write_cubic_syndrome(cs, s);
  CHECK(read_cubic_syndrome(cs, lat) == s);
  std::istringstream bad("mu 9 0 0\n");
  CHECK_THROWS_AS(read_history(bad, lat), ConfigError);
}
