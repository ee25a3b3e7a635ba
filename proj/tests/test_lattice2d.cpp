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

#include <map>
#include <random>
#include <sstream>

#include "rgdecode/lattice2d.hpp"

using namespace rgdecode;

namespace {

PauliWord random_stabilizer_element(const Lattice2D& lat, std::mt19937_64& rng, bool with_plaquettes = true) {
  PauliWord w(lat.num_qubits());
  for (int i = 0; i < lat.ell(); ++i)
    for (int j = 0; j < lat.ell(); ++j) {
      if (rng() & 1) w *= stabilizer(StabilizerKind::Site, i, j, lat);
      if (with_plaquettes && (rng() & 1)) w *= stabilizer(StabilizerKind::Plaquette, i, j, lat);
    }
  return w;
}

PauliWord random_word(std::size_t n, std::mt19937_64& rng) {
  PauliWord w(n);
  for (std::size_t q = 0; q < n; ++q) w.set(q, static_cast<PauliLabel>(rng() & 3));
  return w;
}

}  // namespace

TEST_CASE("stabilizers commute and obey the global constraints") {
  for (int ell : {2, 4}) {
    Lattice2D lat(ell);
    PauliWord prod_a(lat.num_qubits()), prod_b(lat.num_qubits());
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j) {
        const auto a = stabilizer(StabilizerKind::Site, i, j, lat);
        CHECK(a.weight() == 4);
        prod_a *= a;
        prod_b *= stabilizer(StabilizerKind::Plaquette, i, j, lat);
        for (int k = 0; k < ell; ++k)
          for (int m = 0; m < ell; ++m) CHECK(commutes(a, stabilizer(StabilizerKind::Plaquette, k, m, lat)));
      }
    CHECK(prod_a.is_identity());
    CHECK(prod_b.is_identity());
  }
}

TEST_CASE("X on a horizontal edge flips plaquettes (i-1,j) and (i,j)") {
  Lattice2D lat(8);
  for (auto [i, j] : {std::pair{0, 0}, std::pair{3, 5}, std::pair{7, 7}}) {
    const auto s = extract_syndrome(PauliWord::single(lat.num_qubits(), lat.qubit(i, j, Alpha::H), PauliLabel::X), lat);
    CHECK(s.a.cast<int>().sum() == 0);
    CHECK(s.b.cast<int>().sum() == 2);
    CHECK(s.b(i, j) == 1);
    CHECK(s.b(positive_mod(i - 1, 8), j) == 1);
  }
}

TEST_CASE("syndrome is additive and kills the stabilizer group") {
  Lattice2D lat(8);
  std::mt19937_64 rng(11);
  CHECK(extract_syndrome(PauliWord(lat.num_qubits()), lat).trivial());
  for (int t = 0; t < 1000; ++t) {
    const auto e1 = random_word(lat.num_qubits(), rng), e2 = random_word(lat.num_qubits(), rng);
    auto s = extract_syndrome(e1, lat);
    const auto s2 = extract_syndrome(e2, lat);
    s.a = (s.a != s2.a).cast<std::uint8_t>();
    s.b = (s.b != s2.b).cast<std::uint8_t>();
    CHECK(extract_syndrome(e1 * e2, lat) == s);
  }
  for (int t = 0; t < 20; ++t) CHECK(extract_syndrome(random_stabilizer_element(lat, rng), lat).trivial());
}

TEST_CASE("pure error reproduces the syndrome") {
  Lattice2D lat(8);
  CHECK(pure_error(SyndromeConfig::zeros(8), lat).is_identity());

  SyndromeConfig row = SyndromeConfig::zeros(8);
  row.b(2, 1) = row.b(2, 5) = 1;
  const auto t = pure_error(row, lat);
  CHECK(extract_syndrome(t, lat) == row);
  PauliWord expect(lat.num_qubits());
  for (int j = 2; j <= 5; ++j) expect.set(lat.qubit(2, j, Alpha::V), PauliLabel::X);
  CHECK(t == expect);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto s = extract_syndrome(random_word(lat.num_qubits(), rng), lat);
    CHECK(extract_syndrome(pure_error(s, lat), lat) == s);
    CHECK(pure_error(s, lat) == pure_error(s, lat));
  }
  SyndromeConfig odd = SyndromeConfig::zeros(8);
  odd.a(1, 1) = 1;
  CHECK_THROWS_AS(pure_error(odd, lat), PreconditionError);
}

TEST_CASE("logical classes of bare logicals and dressed operators") {
  Lattice2D lat(4);
  for (int k = 0; k < 4; ++k) CHECK(logical_class(bare_logical(k, lat), lat).bits == (1u << k));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_stabilizer_element(lat, rng);
    CHECK(logical_class(s, lat).bits == 0);
    CHECK(logical_class(s * bare_logical(3, lat), lat).bits == 8);
    const LogicalClass l{static_cast<std::uint8_t>(rng() & 15)};
    CHECK(logical_class(s * class_representative(l, lat), lat) == l);
  }
  CHECK_THROWS_AS(logical_class(PauliWord::single(lat.num_qubits(), 0, PauliLabel::X), lat), PreconditionError);
}

TEST_CASE("error times pure error is closed") {
  Lattice2D lat(8);
  std::mt19937_64 rng(9);
  const auto ch = NoiseChannel::depolarizing(lat.num_qubits(), 0.2);
  for (int t = 0; t < 100; ++t) {
    const auto e = sample_error(ch, rng);
    const auto closed = e * pure_error(extract_syndrome(e, lat), lat);
    CHECK_NOTHROW((void)logical_class(closed, lat));
  }
}

TEST_CASE("sampling") {
  Lattice2D lat(4);
  std::mt19937_64 rng(1);
  CHECK(sample_error(NoiseChannel::bit_flip(lat.num_qubits(), 0.0), rng).is_identity());
  const auto all = sample_error(NoiseChannel::bit_flip(lat.num_qubits(), 1.0), rng);
  CHECK(all.x().count() == lat.num_qubits());
  CHECK(!all.has_z());

  // Binomial check on one qubit: 10^5 draws at p = 0.1 within 3 sigma.
  const auto ch = NoiseChannel::bit_flip(lat.num_qubits(), 0.1);
  const int draws = 100000;
  int hits = 0;
  for (int d = 0; d < draws; ++d) hits += sample_error(ch, rng).x().get(5);
  const double sigma = std::sqrt(draws * 0.1 * 0.9);
  CHECK(std::abs(hits - draws * 0.1) < 3 * sigma);
  CHECK_THROWS_AS(NoiseChannel::iid(4, 0.6, 0.6, 0.0), ConfigError);
}

TEST_CASE("exact class probabilities match brute force over all errors at ell = 2") {
  // Oracle: enumerate every error on the 8 qubits and bin it by syndrome and
  // class relative to the canonical pure error.
  Lattice2D lat(2);
  const std::size_t n = lat.num_qubits();
  for (NoiseMode mode : {NoiseMode::BitFlip, NoiseMode::Full}) {
    const auto ch = mode == NoiseMode::BitFlip ? NoiseChannel::bit_flip(n, 0.13) : NoiseChannel::iid(n, 0.07, 0.05, 0.02);
    const int alphabet = mode == NoiseMode::BitFlip ? 2 : 4;
    const int nclass = mode == NoiseMode::BitFlip ? 4 : 16;
    std::map<std::string, Eigen::ArrayXd> table;
    std::map<std::string, SyndromeConfig> synd;
    std::size_t total = 1;
    for (std::size_t q = 0; q < n; ++q) total *= static_cast<std::size_t>(alphabet);
    for (std::size_t code = 0; code < total; ++code) {
      PauliWord e(n);
      double p = 1.0;
      std::size_t c = code;
      for (std::size_t q = 0; q < n; ++q) {
        const auto l = static_cast<PauliLabel>(c % alphabet);
        c /= alphabet;
        e.set(q, l);
        p *= ch.prob(q, l);
      }
      const auto s = extract_syndrome(e, lat);
      std::ostringstream key;
      write_syndrome(key, s);
      const auto cls = logical_class(e * pure_error(s, lat), lat);
      auto& row = table.try_emplace(key.str(), Eigen::ArrayXd::Zero(nclass)).first->second;
      row(cls.bits) += p;
      synd.emplace(key.str(), s);
    }
    for (auto& [key, row] : table) {
      const auto got = exact_class_probabilities(synd.at(key), ch, lat, mode);
      const Eigen::ArrayXd want = row / row.sum();
      CHECK(std::abs(got.sum() - 1.0) < 1e-12);
      CHECK((got - want).abs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("exact class probabilities: trivial, symmetric, stabilizer invariant, bounded") {
  Lattice2D lat2(2);
  const auto zero = exact_class_probabilities(SyndromeConfig::zeros(2), NoiseChannel::bit_flip(8, 0.0), lat2,
                                              NoiseMode::BitFlip);
  CHECK(zero(0) == doctest::Approx(1.0));

  // A single X on H(0,0): the minimal strings X_{0,0,H} and X_{1,0,H} differ by X0
  // and are exchanged by the reflection i -> 1 - i.
  const auto s = extract_syndrome(PauliWord::single(8, lat2.qubit(0, 0, Alpha::H), PauliLabel::X), lat2);
  const auto p = exact_class_probabilities(s, NoiseChannel::bit_flip(8, 0.1), lat2, NoiseMode::BitFlip);
  CHECK(p(0) == doctest::Approx(p(1)));
  CHECK(p(2) == doctest::Approx(p(3)));
  CHECK(p(0) > p(2));

  Lattice2D lat4(4);
  const auto ch = NoiseChannel::bit_flip(lat4.num_qubits(), 0.1);
  std::mt19937_64 rng(2024);
  const auto e = sample_error(ch, rng);
  const auto base = exact_class_probabilities(extract_syndrome(e, lat4), ch, lat4, NoiseMode::BitFlip);
  CHECK(base.sum() == doctest::Approx(1.0));

  CHECK_THROWS_AS(exact_class_probabilities(SyndromeConfig::zeros(8), NoiseChannel::bit_flip(128, 0.1), Lattice2D(8),
                                            NoiseMode::BitFlip),
                  PreconditionError);
  CHECK_THROWS_AS(exact_class_probabilities(SyndromeConfig::zeros(4), ch, lat4, NoiseMode::Full), PreconditionError);
}

TEST_CASE("sector views round-trip and agree with the 2D syndrome and classes") {
  Lattice2D lat(8);
  const auto wl = sector_lattice(lat);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto e = random_word(lat.num_qubits(), rng);
    const auto s = extract_syndrome(e, lat);
    PauliWord rebuilt(lat.num_qubits());
    for (Sector sec : {Sector::X, Sector::Z}) {
      const auto walls = sector_walls(e, sec, lat);
      CHECK(wl.syndrome(walls) == sector_syndrome(s, sec, lat));
      rebuilt *= sector_word(walls, sec, lat);
    }
    CHECK(rebuilt == e);
  }
  for (int k = 0; k < 4; ++k) {
    const Sector sec = k < 2 ? Sector::X : Sector::Z;
    CHECK(sector_class(wl.cut_parities(sector_walls(bare_logical(k, lat), sec, lat)), sec).bits == (1u << k));
  }
}

TEST_CASE("file round-trips") {
  Lattice2D lat(4);
  std::mt19937_64 rng(8);
  const auto e = random_word(lat.num_qubits(), rng);
  std::stringstream es;
  write_error(es, e, lat);
  CHECK(read_error(es, lat) == e);
  const auto s = extract_syndrome(e, lat);
  std::stringstream ss;
  ss << "# comment\n";
  write_syndrome(ss, s);
  CHECK(read_syndrome(ss, lat) == s);
  std::istringstream bad("c 1 1\n");
  CHECK_THROWS_AS(read_syndrome(bad, lat), ConfigError);
}
