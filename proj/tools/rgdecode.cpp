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

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <optional>
#include <sstream>

#include "rgdecode/decoder.hpp"
#include "rgdecode/montecarlo.hpp"
#include "rgdecode/run_config.hpp"

using namespace rgdecode;
using json = nlohmann::json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  return is;
}

std::string class_text(LogicalClass c, bool full) {
  std::ostringstream os;
  os << "X0=" << c.x0() << " X1=" << c.x1();
  if (full) os << " Z0=" << c.z0() << " Z1=" << c.z1();
  return os.str();
}

int decode_2d(const RunConfig& cfg) {
  const int ell = parse_int_list(cfg.ell).front();
  const double p = parse_p_values(cfg.p).front();
  const Lattice2D lat(ell);
  const bool full = cfg.noise == "depolarizing";
  const NoiseChannel ch = full ? NoiseChannel::depolarizing(lat.num_qubits(), p)
                               : NoiseChannel::bit_flip(lat.num_qubits(), p);
  const NoiseMode mode = full ? NoiseMode::Full : NoiseMode::BitFlip;
  std::optional<PauliWord> error;
  SyndromeConfig s;
  if (!cfg.syndrome.empty()) {
    auto is = open_input(cfg.syndrome);
    s = read_syndrome(is, lat);
  } else {
    if (!cfg.error.empty()) {
      auto is = open_input(cfg.error);
      error = read_error(is, lat);
    } else {
      std::mt19937_64 rng(cfg.seed);
      error = sample_error(ch, rng);
    }
    s = extract_syndrome(*error, lat);
  }
  const Decoder2D dec(lat, Schedule::parse(effective_schedule(cfg)), rg_options(cfg));
  const auto r = dec.decode(s, ch, mode);
  if (!cfg.output.empty()) {
    std::ostringstream os;
    write_error(os, r.correction, lat);
    write_file_atomic(cfg.output, os.str());
  }
  std::cout << "decoded class " << class_text(r.decided, full);
  if (error) std::cout << " success=" << success_2d(*error, r.correction, lat);
  std::cout << "\n";
  return 0;
}

int decode_3d(const RunConfig& cfg) {
  const int ell = parse_int_list(cfg.ell).front();
  const double p = parse_p_values(cfg.p).front();
  const double pt = cfg.p_time < 0 ? p : cfg.p_time;
  const Lattice3D lat(ell, cfg.tau);
  std::optional<ErrorHistory> history;
  CubicSyndrome s;
  if (!cfg.syndrome.empty()) {
    auto is = open_input(cfg.syndrome);
    s = read_cubic_syndrome(is, lat);
  } else {
    if (!cfg.history.empty()) {
      auto is = open_input(cfg.history);
      history = read_history(is, lat);
    } else {
      std::mt19937_64 rng(cfg.seed);
      history = sample_history(p, pt, lat, rng);
    }
    s = delta_syndrome(*history);
  }
  const Decoder3D dec(lat, Schedule::parse(effective_schedule(cfg)), rg_options(cfg));
  const auto r = dec.decode(s, p, pt);
  if (!cfg.output.empty()) {
    std::ostringstream os;
    write_history(os, r.correction);
    write_file_atomic(cfg.output, os.str());
  }
  std::cout << "decoded class " << class_text(r.decided, false) << " T=" << r.time_bit;
  if (history) std::cout << " success=" << judge(*history, r.correction);
  std::cout << "\n";
  return 0;
}

std::vector<FailureCurve> run_sweep(const RunConfig& cfg, std::string* csv, std::string* trial_csv) {
  std::ostringstream out, trials;
  write_csv_header(out);
  if (cfg.per_trial) write_trial_csv_header(trials);
  std::vector<FailureCurve> curves;
  const auto ps = parse_p_values(cfg.p);
  for (int ell : parse_int_list(cfg.ell)) {
    FailureCurve curve{ell, {}, {}, {}};
    for (double p : ps) {
      BatchConfig b;
      b.p = p;
      b.p_time = cfg.p_time;
      b.ell = ell;
      b.tau = cfg.tau;
      b.schedule = effective_schedule(cfg);
      b.rg = rg_options(cfg);
      b.trials = cfg.trials;
      b.base_seed = cfg.seed;
      b.threads = cfg.threads;
      b.keep_records = cfg.per_trial;
      const auto r = run_batch(b);
      write_csv_row(out, r);
      if (cfg.per_trial) write_trial_csv(trials, r);
      std::fprintf(stderr, "ell=%d p=%.4f failures=%llu/%llu (%.1f s)\n", ell, p,
                   static_cast<unsigned long long>(r.failures), static_cast<unsigned long long>(r.trials),
                   r.wall_seconds);
      curve.p.push_back(p);
      curve.failures.push_back(r.failures);
      curve.trials.push_back(r.trials);
    }
    curves.push_back(std::move(curve));
  }
  *csv = out.str();
  *trial_csv = trials.str();
  return curves;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? path.substr(0, dot) : path) + suffix;
}

void emit_tables(const RunConfig& cfg, const std::string& csv, const std::string& trial_csv) {
  if (cfg.output.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(cfg.output, csv);
  }
  if (cfg.per_trial) {
    if (cfg.output.empty()) {
      std::cout << trial_csv;
    } else {
      write_file_atomic(sibling(cfg.output, "_trials.csv"), trial_csv);
    }
  }
}

int sweep(const RunConfig& cfg) {
  std::string csv, trial_csv;
  const auto curves = run_sweep(cfg, &csv, &trial_csv);
  emit_tables(cfg, csv, trial_csv);
  std::uint64_t f = 0, n = 0;
  for (const auto& c : curves)
    for (std::size_t k = 0; k < c.p.size(); ++k) {
      f += c.failures[k];
      n += c.trials[k];
    }
  std::fprintf(stderr, "sweep: %zu points, %llu failures in %llu trials\n", curves.size() * curves.front().p.size(),
               static_cast<unsigned long long>(f), static_cast<unsigned long long>(n));
  return 0;
}

json summary_json(const ThresholdEstimate& est) {
  json j;
  j["found"] = est.found;
  j["p_th"] = est.found ? json(est.p_th) : json(nullptr);
  j["ci"] = est.found ? json::array({est.ci.lo, est.ci.hi}) : json(nullptr);
  j["pair_crossings"] = est.pair_crossings;
  j["bootstrap"] = {{"samples", est.bootstrap_samples}, {"crossed", est.bootstrap_crossed}};
  j["curves"] = json::array();
  for (const auto& c : est.curves) {
    std::vector<double> rate;
    for (std::size_t k = 0; k < c.p.size(); ++k)
      rate.push_back(static_cast<double>(c.failures[k]) / static_cast<double>(c.trials[k]));
    j["curves"].push_back({{"ell", c.ell}, {"p", c.p}, {"failures", c.failures}, {"trials", c.trials}, {"rate", rate}});
  }
  return j;
}

int threshold(const RunConfig& cfg) {
  std::string csv, trial_csv;
  auto curves = run_sweep(cfg, &csv, &trial_csv);
  emit_tables(cfg, csv, trial_csv);
  const auto est = estimate_threshold(std::move(curves), cfg.bootstrap, cfg.seed);
  const std::string json_path = !cfg.json.empty() ? cfg.json : cfg.output.empty() ? "" : sibling(cfg.output, ".json");
  const std::string text = summary_json(est).dump(2) + "\n";
  if (json_path.empty()) {
    std::cerr << text;
  } else {
    write_file_atomic(json_path, text);
  }
  if (est.found)
    std::printf("p_th=%.5f ci=[%.5f, %.5f]\n", est.p_th, est.ci.lo, est.ci.hi);
  else
    std::printf("no crossing in the swept range\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Renormalization-group decoder for the toric code"};
  app.set_config("--config", "", "flat key = value file; flags override it");
  std::string dump;
  app.add_option("mode", cfg.mode, "decode-2d | decode-3d | sweep | threshold")->required();
  app.add_option("--ell", cfg.ell, "lattice size, or a comma list for sweeps")->capture_default_str();
  app.add_option("--tau", cfg.tau, "time steps (0: same as ell)")->capture_default_str();
  app.add_option("--p", cfg.p, "error rate, a comma list, or start:stop:step")->capture_default_str();
  app.add_option("--p-time", cfg.p_time, "measurement error rate (negative: same as p)")->capture_default_str();
  app.add_option("--schedule", cfg.schedule, "cell2x2 | cell211 | cell221 | hybrid | CELL@a,b,c;...");
  app.add_option("--bp-rounds", cfg.bp_rounds, "BP rounds per RG level")->capture_default_str();
  app.add_option("--init", cfg.init, "first BP message: prior | posterior | extrinsic")->capture_default_str();
  app.add_option("--noise", cfg.noise, "2D noise: bitflip | depolarizing")->capture_default_str();
  app.add_option("--trials", cfg.trials, "trials per point")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0: RGDECODE_THREADS or all cores)")->capture_default_str();
  app.add_option("--output", cfg.output, "CSV (sweeps) or correction file (decoding)");
  app.add_option("--json", cfg.json, "threshold summary path (default: next to --output)");
  app.add_flag("--per-trial", cfg.per_trial, "also write one row per trial");
  app.add_option("--history", cfg.history, "decode-3d: error history file");
  app.add_option("--syndrome", cfg.syndrome, "syndrome file to decode");
  app.add_option("--error", cfg.error, "decode-2d: error file");
  app.add_option("--bootstrap", cfg.bootstrap, "threshold bootstrap resamples")->capture_default_str();
  app.add_option("--dump-config", dump, "write the effective configuration to this file")->configurable(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    validate(cfg);
    if (!dump.empty()) write_file_atomic(dump, app.config_to_str(true, false));
    if (cfg.mode == "decode-2d") return decode_2d(cfg);
    if (cfg.mode == "decode-3d") return decode_3d(cfg);
    if (cfg.mode == "sweep") return sweep(cfg);
    return threshold(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
