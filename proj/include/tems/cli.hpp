// Copyright 2026 The temsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace tems {

// Exit codes: 0 all requested checks pass, 1 a check failed, 2 config or
// validation error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int workers = 1;
  std::map<std::string, double> tol_overrides;
  std::string out_dir = ".";
  std::string format = "json";  // "json" or "csv" summary flavor
};

// Runs the configured scenario checks (and optional adversarial search);
// writes report.json and summary.csv into out_dir. Reports are byte-stable
// for a fixed config and seed except for the "timestamp" field.
int cmd_verify(const CliOptions& opt);

// Sweeps the configured (alpha, beta, x, protocol) grid; writes scan.csv.
// Builder rejections become rows with status "rejected", not crashes.
int cmd_scan(const CliOptions& opt);

// Runs the configured lemma experiments; writes lemma.json records.
int cmd_lemma(const CliOptions& opt);

// Full argument parsing + dispatch; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace tems
