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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgdecode/decoder.hpp"

namespace rgdecode {

/// Seed of trial `index` in a batch: SplitMix64 applied to a counter, so any
/// subset of trials can be run on its own.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

/// Threads used when a batch does not say; RGDECODE_THREADS, else the hardware count.
int default_threads();

struct Interval {
  double lo = 0;
  double hi = 0;
};

/// Wilson score interval for k successes in n draws (z = 1.96 is 95%).
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96);

struct BatchConfig {
  double p = 0.01;
  double p_time = -1;  // negative: same as p
  int ell = 8;
  int tau = 0;  // 0: same as ell
  std::string schedule = "cell211";
  RgOptions rg;
  std::uint64_t trials = 1000;
  std::uint64_t base_seed = 1;
  int threads = 0;  // 0: default_threads()
  bool keep_records = false;

  [[nodiscard]] double time_rate() const { return p_time < 0 ? p : p_time; }
  [[nodiscard]] int time_extent() const { return tau == 0 ? ell : tau; }
};

struct TrialRecord {
  double p = 0;
  int ell = 0;
  int tau = 0;
  std::string schedule;
  std::uint64_t seed = 0;
  bool success = true;
  unsigned residual = 0;  // residual_directions() of the trial
  double wall_ms = 0;
};

struct BatchResult {
  BatchConfig config;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t residual_counts[3] = {0, 0, 0};
  double wall_seconds = 0;
  std::vector<TrialRecord> records;  // only with keep_records

  [[nodiscard]] double rate() const { return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0; }
  [[nodiscard]] Interval interval() const { return wilson_interval(failures, trials); }
};

/// Thrown when decoding fails inside a batch; names the trial seed.
struct TrialError : std::runtime_error {
  TrialError(std::uint64_t seed, const std::string& what)
      : std::runtime_error("trial seed " + std::to_string(seed) + ": " + what), seed(seed) {}
  std::uint64_t seed;
};

/// One trial: sample a history, decode its syndrome, judge the correction.
TrialRecord run_trial(const Decoder3D& decoder, const BatchConfig& cfg, std::uint64_t seed);

/// Runs cfg.trials trials in parallel. The result does not depend on the thread count.
BatchResult run_batch(const BatchConfig& cfg);

// ---------------------------------------------------------------------------

/// Failure counts of one lattice size over a p grid.
struct FailureCurve {
  int ell = 0;
  std::vector<double> p;
  std::vector<std::uint64_t> failures;
  std::vector<std::uint64_t> trials;
};

struct ThresholdEstimate {
  bool found = false;
  double p_th = 0;
  Interval ci;                        // bootstrap percentile interval
  std::vector<double> pair_crossings;  // one per size pair that crosses
  int bootstrap_samples = 0;
  int bootstrap_crossed = 0;
  std::vector<FailureCurve> curves;
};

/// Crossing of the smoothed log failure curves of two sizes, interpolated
/// linearly in (p, log rate). Where the curves cross more than once, the
/// last crossing from "larger lattice better" to "larger lattice worse" is
/// used. Empty if there is none.
std::optional<double> curve_crossing(const FailureCurve& small, const FailureCurve& large);

/// Mean of the pairwise crossings, with a bootstrap interval from binomial
/// resampling of every point. PreconditionError unless there are at least two
/// sizes on a common grid of at least three points.
ThresholdEstimate estimate_threshold(std::vector<FailureCurve> curves, int bootstrap = 1000,
                                     std::uint64_t seed = 12345);

// ---------------------------------------------------------------------------

struct AnisotropyReport {
  std::uint64_t trials = 0;
  std::uint64_t counts[3] = {0, 0, 0};
  double rate[3] = {0, 0, 0};
  Interval ci[3];

  /// Largest pairwise rate difference in units of its standard error.
  [[nodiscard]] double max_pairwise_sigma() const;
};

/// Residual logical rates along i, j and time.
AnisotropyReport marginal_anisotropy_report(const std::vector<TrialRecord>& trials);
AnisotropyReport marginal_anisotropy_report(const BatchResult& batch);

// ---------------------------------------------------------------------------

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const BatchResult& b);
void write_trial_csv_header(std::ostream& os);
void write_trial_csv(std::ostream& os, const BatchResult& b);

}  // namespace rgdecode
