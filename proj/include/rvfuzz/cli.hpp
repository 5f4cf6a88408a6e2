// Copyright 2026 The rvfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvfuzz/codegen.hpp"
#include "rvfuzz/difftest.hpp"

namespace rvfuzz {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitConfigError = 2;

struct Range {
  std::uint64_t lo = 1, hi = 1;
  friend bool operator==(const Range &, const Range &) = default;
};
// "7" or "1..1000". Throws ConfigError.
Range parse_range(const std::string &text);
Range range_from_json(const nlohmann::json &j);

struct RunConfig {
  std::string listing_path;                 // a prototype listing file
  std::string listing_kind = "explicit-all";  // built-in listing when no path
  MachineParams machine;
  std::optional<std::string> ratio_type;
  Range seq_len{10, 10};
  Range data_len{10, 10};
  Range seeds{1, 1};
  std::vector<ScheduleMode> modes = {ScheduleMode::AllIn, ScheduleMode::Unit,
                                     ScheduleMode::Random};
  double coin_bias = 0.5;
  std::uint32_t vlen_max = 1024;
  bool oracle_profile = false;
  bool oracle_self_check = false;
  std::string compilers_path;
  std::string out_dir = "rvfuzz-out";
  std::string report_path;  // default: <out_dir>/report.jsonl
  unsigned jobs = 1;
  bool resume = false;
  bool keep_passing = false;  // keep sources of all-Pass seeds
};

// Reads the declarative config object; unknown keys are errors.
RunConfig load_run_config(const nlohmann::json &j);
RunConfig load_run_config_file(const std::string &path);

// Names accepted by listing_kind.
std::string builtin_listing(const std::string &kind);

struct Listing {
  // One record per prototype line: the generator draws from these.
  std::shared_ptr<const std::vector<IntrinsicDef>> prototypes;
  // Name-keyed with overload weights: the coverage denominator.
  std::shared_ptr<const std::vector<IntrinsicDef>> definitions;
};
Listing load_listing(const RunConfig &cfg);
GenConfig gen_config(const RunConfig &cfg);

// Writes case files and JSON sidecars; returns the .c paths.
std::vector<std::string> cmd_generate(const RunConfig &cfg, std::ostream &log);

// Returns an exit code. Compiler configs come from cfg.compilers_path.
int cmd_fuzz(const RunConfig &cfg, std::ostream &log);

struct CoverageOptions {
  std::vector<std::string> paths;  // files or directories of .c programs
  std::string records_path;
  bool per_kind = false;  // one campaign per built-in listing kind
};
int cmd_coverage(const RunConfig &cfg, const CoverageOptions &opts, std::ostream &out);

struct ReplayOptions {
  std::string report_path;
  std::optional<std::size_t> record_index;  // 0-based among verdict records
  std::optional<std::uint64_t> seed;
  std::optional<ScheduleMode> mode;
  std::string archive_path;  // source to compare against
};
int cmd_replay(const RunConfig &cfg, const ReplayOptions &opts, std::ostream &out);

// Fuzz campaign over an explicit compiler list (no file access for configs).
int run_campaign(const RunConfig &cfg, const Listing &listing,
                 const std::vector<CompilerConfig> &compilers, std::ostream &log);

}  // namespace rvfuzz
