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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvfuzz/codegen.hpp"

namespace rvfuzz {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Command templates expand {src}, {exe} and {opt} ("O2") per argument.
struct CompilerConfig {
  std::string label;
  std::vector<std::string> compile;
  std::vector<std::string> opt_levels = {"O0", "O1", "O2", "O3", "Os"};
  std::vector<std::string> run;  // empty: execute {exe} directly
  double compile_timeout = 120;
  double run_timeout = 20;
};

// Checks the architecture flag and resolves executables. Throws ConfigError.
void validate(const CompilerConfig &c);
std::vector<CompilerConfig> load_compiler_configs(const nlohmann::json &j);
// RVFUZZ_CC_<LABEL> and RVFUZZ_EMU_<LABEL> replace the compile and run
// executables; LABEL is upper-cased with other characters mapped to '_'.
void apply_env_overrides(std::vector<CompilerConfig> &configs);

enum class CompileStatus { Ok, Error, Crash, Timeout };
enum class RunStatus { Ok, Crash, Timeout, NotRun };
const char *to_string(CompileStatus s);
const char *to_string(RunStatus s);

struct RunOutcome {
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::AllIn;
  std::string compiler;
  std::string opt;
  CompileStatus compile = CompileStatus::Ok;
  RunStatus run = RunStatus::NotRun;
  std::string stdout_text;
  std::string diagnostics;
  std::string source_path;
};

struct RunOptions {
  std::string work_dir;  // sources and executables go here
  unsigned jobs = 1;
  bool keep_executables = false;
};

// One outcome per (config, opt level), in config-then-opt order. Throws
// ConfigError before any job starts when an executable is missing.
std::vector<RunOutcome> run_case(const ProgramCase &c, const std::vector<CompilerConfig> &configs,
                                 const RunOptions &opts);
// Same for several variants of one seed, sharing the worker pool.
std::vector<RunOutcome> run_cases(const std::vector<ProgramCase> &cases,
                                  const std::vector<CompilerConfig> &configs,
                                  const RunOptions &opts);

// Crash detection in compiler diagnostics.
bool has_crash_signature(const std::string &diagnostics);

enum class Classification { Pass, CompileError, CompilerCrash, RuntimeCrash, WrongResult };
enum class Strategy { None, CrossCompiler, CrossOptimization, CrossVariant };
const char *to_string(Classification c);
const char *to_string(Strategy s);
inline constexpr Classification kAllClassifications[] = {
    Classification::Pass, Classification::CompileError, Classification::CompilerCrash,
    Classification::RuntimeCrash, Classification::WrongResult};

struct Witness {
  ScheduleMode mode = ScheduleMode::AllIn;
  std::string compiler;
  std::string opt;
  std::string status;  // "ok", "compile-error", "compiler-crash", ...
  std::string source_path;
  friend bool operator==(const Witness &, const Witness &) = default;
};

struct Verdict {
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::AllIn;  // mode of the failing side
  Classification classification = Classification::Pass;
  Strategy strategy = Strategy::None;
  std::vector<Witness> witnesses;  // failing side first, then its reference
  std::string signature;           // dedup key
  std::string detail;
  friend bool operator==(const Verdict &, const Verdict &) = default;
};

// Outcomes of one seed (any modes, configs, opt levels). Crashes are
// classified first; compile errors are excluded from output comparison.
std::vector<Verdict> compare(const std::vector<RunOutcome> &outcomes);

struct ReportSummary {
  std::size_t cases = 0;
  std::size_t counts[5] = {};
  std::size_t unique_signatures = 0;
  bool all_pass() const;
};

nlohmann::json verdict_record(const Verdict &v, const std::string &config_snapshot);
std::optional<Verdict> verdict_from_record(const nlohmann::json &j);
nlohmann::json summary_record(const ReportSummary &s);
// Folds non-summary records into a summary; duplicates share a signature.
ReportSummary summarize(const std::vector<nlohmann::json> &records);

// Writes one JSON line per verdict and a trailing summary line. Throws
// std::runtime_error when the sink fails.
ReportSummary report(const std::vector<Verdict> &verdicts, std::ostream &sink,
                     const std::string &config_snapshot = {});

}  // namespace rvfuzz
