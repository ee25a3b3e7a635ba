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
#include <string>
#include <vector>

#include "rgdecode/rg.hpp"

namespace rgdecode {

/// Effective settings of one command-line run.
struct RunConfig {
  std::string mode;  // decode-2d, decode-3d, sweep or threshold
  std::string ell = "8";
  int tau = 0;  // 0: same as ell
  std::string p = "0.01";
  double p_time = -1;  // negative: same as p
  std::string schedule;  // empty: cell2x2 in 2D, cell211 in 3D
  int bp_rounds = 3;
  std::string init = "prior";
  std::string noise = "bitflip";  // 2D only: bitflip or depolarizing
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string output;
  std::string json;
  bool per_trial = false;
  std::string history;
  std::string syndrome;
  std::string error;
  int bootstrap = 1000;
};

/// "a:b:c" (inclusive, step c) or a comma list.
std::vector<double> parse_p_values(const std::string& text);
/// Comma list of lattice sizes.
std::vector<int> parse_int_list(const std::string& text);
MessageInit parse_message_init(const std::string& text);
std::string to_string(MessageInit init);

[[nodiscard]] std::string effective_schedule(const RunConfig& cfg);
[[nodiscard]] RgOptions rg_options(const RunConfig& cfg);

/// Checks everything that can be checked without running: mode, rates, sizes
/// against the schedule's divisibility rules, file arguments. ConfigError on failure.
void validate(const RunConfig& cfg);

/// Writes to a temporary file next to `path`, then renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace rgdecode
