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

#include "rgdecode/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

namespace rgdecode {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(splitmix64(base_seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

int default_threads() {
  if (const char* env = std::getenv("RGDECODE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 4096) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double centre = (ph + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

TrialRecord run_trial(const Decoder3D& decoder, const BatchConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  const Lattice3D& lat = decoder.lattice();
  const ErrorHistory h = sample_history(cfg.p, cfg.time_rate(), lat, rng);
  const CubicSyndrome s = delta_syndrome(h);
  const Decode3DResult r = decoder.decode(s, cfg.p, cfg.time_rate());
  TrialRecord rec;
  rec.p = cfg.p;
  rec.ell = lat.ell();
  rec.tau = lat.tau();
  rec.schedule = cfg.schedule;
  rec.seed = seed;
  rec.success = judge(h, r.correction);
  rec.residual = residual_directions(h, r.correction);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

BatchResult run_batch(const BatchConfig& cfg) {
  if (cfg.trials < 1) throw PreconditionError("run_batch: at least one trial required");
  if (!(cfg.p >= 0 && cfg.p <= 1) || !(cfg.time_rate() >= 0 && cfg.time_rate() <= 1))
    throw ConfigError("run_batch: error rates must lie in [0, 1]");
  const Lattice3D lat(cfg.ell, cfg.time_extent());
  const Decoder3D decoder(lat, Schedule::parse(cfg.schedule), cfg.rg);

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= cfg.trials || stop.load()) return;
      const std::uint64_t seed = trial_seed(cfg.base_seed, i);
      try {
        records[i] = run_trial(decoder, cfg, seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::make_exception_ptr(TrialError(seed, e.what()));
        stop = true;
        return;
      }
    }
  };
  const int threads =
      static_cast<int>(std::min<std::uint64_t>(cfg.threads > 0 ? cfg.threads : default_threads(), cfg.trials));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  BatchResult out;
  out.config = cfg;
  out.trials = cfg.trials;
  for (const auto& r : records) {
    out.failures += !r.success;
    for (int a = 0; a < 3; ++a) out.residual_counts[a] += (r.residual >> a) & 1u;
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.keep_records) out.records = std::move(records);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double smoothed_log_rate(std::uint64_t f, std::uint64_t n) {
  return std::log((static_cast<double>(f) + 0.5) / (static_cast<double>(n) + 1.0));
}

}  // namespace

std::optional<double> curve_crossing(const FailureCurve& small, const FailureCurve& large) {
  const std::size_t m = small.p.size();
  std::vector<double> d(m);
  for (std::size_t k = 0; k < m; ++k)
    d[k] = smoothed_log_rate(large.failures[k], large.trials[k]) - smoothed_log_rate(small.failures[k], small.trials[k]);
  std::optional<double> found;
  std::optional<std::size_t> last_neg;
  for (std::size_t k = 0; k < m; ++k) {
    if (d[k] < 0) {
      last_neg = k;
    } else if (d[k] > 0 && last_neg) {
      const std::size_t i = *last_neg;
      found = small.p[i] + (small.p[k] - small.p[i]) * (-d[i]) / (d[k] - d[i]);
      last_neg.reset();
    }
  }
  return found;
}

namespace {

std::optional<double> mean_crossing(const std::vector<FailureCurve>& curves, std::vector<double>* pairs) {
  double sum = 0;
  int n = 0;
  for (std::size_t a = 0; a < curves.size(); ++a)
    for (std::size_t b = a + 1; b < curves.size(); ++b)
      if (auto c = curve_crossing(curves[a], curves[b])) {
        sum += *c;
        ++n;
        if (pairs) pairs->push_back(*c);
      }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace

ThresholdEstimate estimate_threshold(std::vector<FailureCurve> curves, int bootstrap, std::uint64_t seed) {
  if (curves.size() < 2) throw PreconditionError("estimate_threshold: at least two lattice sizes required");
  std::sort(curves.begin(), curves.end(), [](const auto& x, const auto& y) { return x.ell < y.ell; });
  for (const auto& c : curves) {
    if (c.p.size() < 3) throw PreconditionError("estimate_threshold: at least three p points per size required");
    if (c.failures.size() != c.p.size() || c.trials.size() != c.p.size())
      throw PreconditionError("estimate_threshold: curve arrays differ in length");
    if (c.p != curves.front().p) throw PreconditionError("estimate_threshold: sizes must share one p grid");
    for (std::size_t k = 0; k < c.p.size(); ++k)
      if (c.trials[k] == 0 || c.failures[k] > c.trials[k])
        throw PreconditionError("estimate_threshold: bad failure counts");
  }
  ThresholdEstimate est;
  const auto centre = mean_crossing(curves, &est.pair_crossings);
  est.curves = curves;
  if (!centre) return est;
  est.found = true;
  est.p_th = *centre;

  std::mt19937_64 rng(seed);
  std::vector<double> samples;
  std::vector<FailureCurve> resampled = curves;
  for (int r = 0; r < bootstrap; ++r) {
    for (std::size_t c = 0; c < curves.size(); ++c)
      for (std::size_t k = 0; k < curves[c].p.size(); ++k) {
        const double rate = static_cast<double>(curves[c].failures[k]) / static_cast<double>(curves[c].trials[k]);
        std::binomial_distribution<std::uint64_t> draw(curves[c].trials[k], rate);
        resampled[c].failures[k] = draw(rng);
      }
    if (auto m = mean_crossing(resampled, nullptr)) samples.push_back(*m);
  }
  est.bootstrap_samples = bootstrap;
  est.bootstrap_crossed = static_cast<int>(samples.size());
  if (samples.empty()) {
    est.ci = {est.p_th, est.p_th};
  } else {
    std::sort(samples.begin(), samples.end());
    auto at = [&](double q) {
      const auto i = static_cast<std::size_t>(std::floor(q * static_cast<double>(samples.size() - 1)));
      return samples[i];
    };
    est.ci = {at(0.025), at(0.975)};
  }
  return est;
}

// ---------------------------------------------------------------------------

double AnisotropyReport::max_pairwise_sigma() const {
  double worst = 0;
  const double n = static_cast<double>(trials);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const double var = (rate[a] * (1 - rate[a]) + rate[b] * (1 - rate[b])) / n;
      const double diff = std::abs(rate[a] - rate[b]);
      if (var > 0) worst = std::max(worst, diff / std::sqrt(var));
    }
  return worst;
}

namespace {

AnisotropyReport make_report(std::uint64_t trials, const std::uint64_t* counts) {
  AnisotropyReport r;
  r.trials = trials;
  for (int a = 0; a < 3; ++a) {
    r.counts[a] = counts[a];
    r.rate[a] = trials ? static_cast<double>(counts[a]) / static_cast<double>(trials) : 0;
    r.ci[a] = wilson_interval(counts[a], trials);
  }
  return r;
}

}  // namespace

AnisotropyReport marginal_anisotropy_report(const std::vector<TrialRecord>& trials) {
  std::uint64_t counts[3] = {0, 0, 0};
  for (const auto& t : trials)
    for (int a = 0; a < 3; ++a) counts[a] += (t.residual >> a) & 1u;
  return make_report(trials.size(), counts);
}

AnisotropyReport marginal_anisotropy_report(const BatchResult& batch) {
  return make_report(batch.trials, batch.residual_counts);
}

// ---------------------------------------------------------------------------

void write_csv_header(std::ostream& os) { os << "p,ell,tau,schedule,trials,failures,rate,ci_low,ci_high,base_seed\n"; }

void write_csv_row(std::ostream& os, const BatchResult& b) {
  const Interval ci = b.interval();
  os << b.config.p << ',' << b.config.ell << ',' << b.config.time_extent() << ',' << b.config.schedule << ','
     << b.trials << ',' << b.failures << ',' << b.rate() << ',' << ci.lo << ',' << ci.hi << ',' << b.config.base_seed
     << '\n';
}

void write_trial_csv_header(std::ostream& os) {
  os << "p,ell,tau,schedule,seed,outcome,residual_i,residual_j,residual_t,wall_ms\n";
}

void write_trial_csv(std::ostream& os, const BatchResult& b) {
  for (const auto& r : b.records)
    os << r.p << ',' << r.ell << ',' << r.tau << ',' << r.schedule << ',' << r.seed << ','
       << (r.success ? "success" : "failure") << ',' << (r.residual & 1u) << ',' << ((r.residual >> 1) & 1u) << ','
       << ((r.residual >> 2) & 1u) << ',' << r.wall_ms << '\n';
}

}  // namespace rgdecode
