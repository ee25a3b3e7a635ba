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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (capped at 100).

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "rgdecode/decoder.hpp"
#include "rgdecode/montecarlo.hpp"

using namespace rgdecode;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::uint8_t> random_bits(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> b(n);
  for (auto& v : b) v = rng() & 1;
  return b;
}

// 1. Cell-level exactness.
Verdict cell_exactness() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double worst = 0;
  for (const char* name : {"cell2x2", "cell211", "cell221"}) {
    const UnitCellSpec& cell = builtin_cell(name);
    const int n = cell.num_qubits();
    for (int rep = 0; rep < 100; ++rep) {
      const auto joint = oracle::random_joint(n, rng);
      const auto syn = random_bits(cell.measured_cubes().size(), rng);
      std::vector<Eigen::Array2d> msgs(static_cast<std::size_t>(n), Eigen::Array2d(0.5, 0.5));
      if (rep % 2)
        for (auto& m : msgs) m = Eigen::Array2d(u(rng), u(rng));
      auto st = CellState<double>::make(cell, oracle::exponent_table(cell, joint), syn);
      for (int q = 0; q < n; ++q) st.in_messages[static_cast<std::size_t>(q)].probs = msgs[static_cast<std::size_t>(q)] / msgs[static_cast<std::size_t>(q)].sum();
      for (auto& m : msgs) m /= m.sum();
      const auto got = cell_distribution(st).probs();
      const auto want = oracle::brute_force_currents(cell, joint, syn, msgs);
      worst = std::max(worst, (got - want).abs().maxCoeff());
    }
  }
  return {worst <= 1e-12, fmt("300 random cells, max |RG - brute force| = %.3g (limit 1e-12)", worst)};
}

// 2. RG+BP against exact maximum likelihood in 2D.
Verdict oracle_comparison() {
  const Lattice2D lat(4);
  const Decoder2D dec(lat);
  bool ok = true;
  std::string detail;
  for (double p : {0.05, 0.10}) {
    const auto ch = NoiseChannel::bit_flip(lat.num_qubits(), p);
    std::mt19937_64 rng(2000 + static_cast<std::uint64_t>(p * 1000));
    int rg_fail = 0, ml_fail = 0;
    for (int t = 0; t < 1000; ++t) {
      const PauliWord e = sample_error(ch, rng);
      const auto s = extract_syndrome(e, lat);
      rg_fail += !success_2d(e, dec.decode(s, ch, NoiseMode::BitFlip).correction, lat);
      const auto exact = exact_class_probabilities(s, ch, lat, NoiseMode::BitFlip);
      const int truth = logical_class(e * pure_error(s, lat), lat).bits & 3;
      // Maximum likelihood with the same tie rule as the decoder.
      ml_fail += argmax_first(exact) != truth;
    }
    const double ratio = ml_fail ? static_cast<double>(rg_fail) / ml_fail : (rg_fail ? INFINITY : 1.0);
    ok = ok && ratio <= 2.0 && ratio >= 0.5;
    detail += fmt("p=%.2f RG %d/1000 ML %d/1000 ratio %.2f; ", p, rg_fail, ml_fail, ratio);
  }
  return {ok, detail + "limit: ratio within [0.5, 2]"};
}

// 3. Codespace return.
Verdict codespace_return() {
  const Lattice3D lat(8);
  const Decoder3D dec(lat);
  int bad = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    std::mt19937_64 rng(trial_seed(3003, static_cast<std::uint64_t>(t)));
    ErrorHistory h = sample_history(0.05, lat, rng);
    const auto r = dec.decode(delta_syndrome(h), 0.05, 0.05);
    h ^= r.correction;
    bad += delta_syndrome(h).count() != 0;
  }
  return {bad == 0, fmt("%d/%d composed corrections with nonzero syndrome (limit 0)", bad, n)};
}

BatchResult batch(int ell, double p, std::uint64_t trials, const std::string& schedule, std::uint64_t seed) {
  BatchConfig c;
  c.ell = ell;
  c.p = p;
  c.trials = trials;
  c.schedule = schedule;
  c.base_seed = seed;
  const auto r = run_batch(c);
  std::fprintf(stderr, "  ell=%d p=%.4f %s: %llu/%llu failures (%.0f s)\n", ell, p, schedule.c_str(),
               static_cast<unsigned long long>(r.failures), static_cast<unsigned long long>(r.trials),
               r.wall_seconds);
  return r;
}

// 4. Threshold crossing.
Verdict threshold_reproduction() {
  std::vector<FailureCurve> curves;
  for (int ell : {8, 16}) {
    FailureCurve c{ell, {}, {}, {}};
    for (int k = 0; k <= 8; ++k) {
      const double p = 0.010 + 0.002 * k;
      const auto r = batch(ell, p, 1000, "cell211", 4004);
      c.p.push_back(p);
      c.failures.push_back(r.failures);
      c.trials.push_back(r.trials);
    }
    curves.push_back(c);
  }
  const auto est = estimate_threshold(curves, 1000, 4004);
  if (!est.found) return {false, "no crossing between ell=8 and ell=16 in 0.010-0.026"};
  return {est.p_th >= 0.013 && est.p_th <= 0.023,
          fmt("p_th = %.4f, bootstrap 95%% [%.4f, %.4f] (limit [0.013, 0.023])", est.p_th, est.ci.lo, est.ci.hi)};
}

// 5. Below-threshold suppression.
Verdict suppression() {
  const auto small = batch(8, 0.010, 10000, "cell211", 5005);
  const auto large = batch(16, 0.010, 10000, "cell211", 5006);
  const Interval a = small.interval(), b = large.interval();
  return {b.hi < a.lo, fmt("p=0.010: ell=8 %.5f [%.5f, %.5f], ell=16 %.5f [%.5f, %.5f] (need disjoint, ell=16 below)",
                           small.rate(), a.lo, a.hi, large.rate(), b.lo, b.hi)};
}

// 6 and 7 share the 2x1x1 batch at p = 0.015.
Verdict hybrid_consistency(const BatchResult& base) {
  const auto hyb = batch(8, 0.015, 3000, "hybrid", 6006);
  const double va = base.rate() * (1 - base.rate()) / static_cast<double>(base.trials);
  const double vb = hyb.rate() * (1 - hyb.rate()) / static_cast<double>(hyb.trials);
  const double sigma = std::abs(base.rate() - hyb.rate()) / std::sqrt(va + vb);
  return {sigma <= 3, fmt("p=0.015 ell=8: cell211 %.4f (%llu trials), hybrid %.4f (%llu trials), %.2f sigma (limit 3)",
                          base.rate(), static_cast<unsigned long long>(base.trials), hyb.rate(),
                          static_cast<unsigned long long>(hyb.trials), sigma)};
}

Verdict anisotropy(const BatchResult& base) {
  const auto r = marginal_anisotropy_report(base);
  const double s = r.max_pairwise_sigma();
  return {s <= 3, fmt("p=0.015 ell=8 %llu trials: rates i %.4f j %.4f t %.4f, max pairwise %.2f sigma (limit 3)",
                      static_cast<unsigned long long>(r.trials), r.rate[0], r.rate[1], r.rate[2], s)};
}

// 8. Property battery over the modules.
Verdict invariants() {
  std::mt19937_64 rng(8008);
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* what) {
    if (!ok) failed.push_back(what);
  };

  // Pauli: basis round trips and commutation symmetry.
  for (const char* name : {"cell2x2", "cell211", "cell221"}) {
    const CellBasis& basis = builtin_cell(name).basis();
    for (int rep = 0; rep < 200; ++rep) {
      const auto e = BitVector::from_index(rng() & ((std::uint64_t{1} << basis.size()) - 1), basis.size());
      check(basis.decompose(basis.compose(e)) == e, "basis round trip");
    }
  }
  // Normalization of every emitted distribution.
  for (const char* name : {"cell2x2", "cell211", "cell221"}) {
    const UnitCellSpec& cell = builtin_cell(name);
    for (int rep = 0; rep < 20; ++rep) {
      auto st = CellState<double>::make(cell, oracle::exponent_table(cell, oracle::random_joint(cell.num_qubits(), rng)),
                                        random_bits(cell.measured_cubes().size(), rng));
      check(std::abs(cell_distribution(st).probs().sum() - 1) < 1e-9, "cell_distribution normalized");
      for (const auto& s : cell.shared_map())
        check(std::abs(bp_message_update(st, s.local).probs.sum() - 1) < 1e-9, "message normalized");
    }
  }
  {
    const Lattice3D lat(8);
    const Decoder3D dec(lat);
    for (int rep = 0; rep < 5; ++rep) {
      const auto h = sample_history(0.02, lat, rng);
      for (const auto& l : dec.rg().levels(delta_syndrome(h).db, ProbArray<double>::Constant(lat.walls().num_walls(), 0.02)))
        for (Eigen::Index c = 0; c < l.joints.cols(); ++c)
          check(std::abs(l.joints.col(c).sum() - 1) < 1e-9, "level joints normalized");
    }
  }
  // Additivity of syndromes in 2D and 3D; pure error round trip.
  {
    const Lattice2D lat(8);
    const auto ch = NoiseChannel::depolarizing(lat.num_qubits(), 0.1);
    for (int rep = 0; rep < 100; ++rep) {
      const auto e1 = sample_error(ch, rng), e2 = sample_error(ch, rng);
      const auto s1 = extract_syndrome(e1, lat), s2 = extract_syndrome(e2, lat), s12 = extract_syndrome(e1 * e2, lat);
      check(((s1.a != s2.a).cast<std::uint8_t>() == s12.a).all() && ((s1.b != s2.b).cast<std::uint8_t>() == s12.b).all(),
            "2D syndrome additivity");
      check(extract_syndrome(pure_error(s1, lat), lat) == s1, "pure error round trip");
    }
    const Lattice3D lat3(4);
    for (int rep = 0; rep < 100; ++rep) {
      const auto h1 = sample_history(0.1, lat3, rng), h2 = sample_history(0.1, lat3, rng);
      ErrorHistory h12 = h1;
      h12 ^= h2;
      const auto d1 = delta_syndrome(h1).db, d2 = delta_syndrome(h2).db, d12 = delta_syndrome(h12).db;
      bool same = true;
      for (std::size_t i = 0; i < d1.size(); ++i) same = same && ((d1[i] ^ d2[i]) == d12[i]);
      check(same, "3D syndrome additivity");
    }
  }
  // Determinism under parallelism.
  {
    BatchConfig c;
    c.ell = 8;
    c.p = 0.02;
    c.trials = 200;
    c.keep_records = true;
    c.threads = 1;
    const auto a = run_batch(c);
    c.threads = 4;
    const auto b = run_batch(c);
    bool same = a.failures == b.failures;
    for (std::size_t i = 0; i < a.records.size(); ++i)
      same = same && a.records[i].success == b.records[i].success && a.records[i].residual == b.records[i].residual;
    check(same, "batch independent of thread count");
  }
  std::string detail = "basis round trips, normalization, additivity, pure errors, parallel determinism";
  if (!failed.empty()) {
    std::set<std::string> uniq(failed.begin(), failed.end());
    detail = "failed:";
    for (const auto& f : uniq) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rgdecode acceptance run"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int k) { return only.empty() || std::find(only.begin(), only.end(), k) != only.end(); };

  int failures = 0;
  auto report = [&](int k, const std::function<Verdict()>& run) {
    if (!wanted(k)) return;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("criterion %d %s: %s [%.0f s]\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
  };
  report(1, cell_exactness);
  report(2, oracle_comparison);
  report(3, codespace_return);
  report(4, threshold_reproduction);
  report(5, suppression);
  std::optional<BatchResult> base;
  if (wanted(6) || wanted(7)) base = batch(8, 0.015, 10000, "cell211", 7007);
  report(6, [&] { return hybrid_consistency(*base); });
  report(7, [&] { return anisotropy(*base); });
  report(8, invariants);
  return std::min(failures, 100);
}
