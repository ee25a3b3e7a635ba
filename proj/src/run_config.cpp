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

#include "rgdecode/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rgdecode/decoder.hpp"

namespace rgdecode {

namespace {

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::vector<double> parse_p_values(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("p range must be start:stop:step, got '" + text + "'");
    const double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
    if (!(step > 0) || b < a) throw ConfigError("p range needs step > 0 and start <= stop");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    if (n > 100000) throw ConfigError("p range has too many points");
    for (long k = 0; k <= n; ++k) out.push_back(std::round((a + static_cast<double>(k) * step) * 1e12) / 1e12);
  } else {
    for (const auto& s : split(text, ',')) out.push_back(parse_double(s));
  }
  if (out.empty()) throw ConfigError("empty p list");
  for (double p : out)
    if (!(p >= 0 && p <= 1)) throw ConfigError("error rate outside [0, 1]: " + std::to_string(p));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty size list");
  return out;
}

MessageInit parse_message_init(const std::string& text) {
  if (text == "prior") return MessageInit::Prior;
  if (text == "posterior") return MessageInit::Posterior;
  if (text == "extrinsic") return MessageInit::Extrinsic;
  throw ConfigError("unknown message init '" + text + "' (prior, posterior, extrinsic)");
}

std::string to_string(MessageInit init) {
  switch (init) {
    case MessageInit::Prior:
      return "prior";
    case MessageInit::Posterior:
      return "posterior";
    case MessageInit::Extrinsic:
      return "extrinsic";
  }
  return "prior";
}

std::string effective_schedule(const RunConfig& cfg) {
  if (!cfg.schedule.empty()) return cfg.schedule;
  return cfg.mode == "decode-2d" ? "cell2x2" : "cell211";
}

RgOptions rg_options(const RunConfig& cfg) {
  RgOptions o;
  o.bp_rounds = cfg.bp_rounds;
  o.init = parse_message_init(cfg.init);
  return o;
}

void validate(const RunConfig& cfg) {
  static const char* kModes[] = {"decode-2d", "decode-3d", "sweep", "threshold"};
  if (std::find(std::begin(kModes), std::end(kModes), cfg.mode) == std::end(kModes))
    throw ConfigError("unknown mode '" + cfg.mode + "' (decode-2d, decode-3d, sweep, threshold)");
  if (cfg.bp_rounds < 0) throw ConfigError("bp-rounds must be >= 0");
  (void)rg_options(cfg);
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
  if (cfg.tau < 0) throw ConfigError("tau must be >= 0");
  if (cfg.p_time > 1) throw ConfigError("p-time must be <= 1");
  if (cfg.noise != "bitflip" && cfg.noise != "depolarizing")
    throw ConfigError("noise must be bitflip or depolarizing");

  const auto ps = parse_p_values(cfg.p);
  const auto ells = parse_int_list(cfg.ell);
  const bool decode = cfg.mode.rfind("decode", 0) == 0;
  if (decode && (ps.size() != 1 || ells.size() != 1)) throw ConfigError(cfg.mode + " takes a single ell and p");
  if (cfg.mode == "threshold") {
    if (ells.size() < 2) throw ConfigError("threshold needs at least two lattice sizes");
    if (ps.size() < 3) throw ConfigError("threshold needs at least three p values");
  }
  if (cfg.mode == "decode-2d" && !cfg.history.empty()) throw ConfigError("--history is for decode-3d");
  if (cfg.mode == "decode-3d" && !cfg.error.empty()) throw ConfigError("--error is for decode-2d");
  if (!cfg.history.empty() && !cfg.syndrome.empty()) throw ConfigError("give --history or --syndrome, not both");
  if (!cfg.error.empty() && !cfg.syndrome.empty()) throw ConfigError("give --error or --syndrome, not both");
  for (const auto* f : {&cfg.history, &cfg.syndrome, &cfg.error})
    if (!f->empty() && !std::filesystem::exists(*f)) throw ConfigError("no such file: " + *f);

  const Schedule schedule = Schedule::parse(effective_schedule(cfg));
  // Building the decoder checks the schedule against the lattice shape.
  for (int ell : ells) {
    if (ell < 2 || (ell & (ell - 1)) != 0) throw ConfigError("ell must be a power of two >= 2, got " + std::to_string(ell));
    const int tau = cfg.tau == 0 ? ell : cfg.tau;
    if (cfg.mode == "decode-2d") {
      RgDecoder(WallLattice(2, {ell, ell, 1}), schedule);
    } else {
      if (tau < 2 || (tau & (tau - 1)) != 0) throw ConfigError("tau must be a power of two >= 2");
      RgDecoder(WallLattice(3, {ell, ell, tau}), schedule);
    }
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace rgdecode
