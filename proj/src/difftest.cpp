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

#include "rvfuzz/difftest.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <thread>

#include "rvfuzz/process.hpp"

namespace rvfuzz {

namespace fs = std::filesystem;

const char *to_string(CompileStatus s) {
  switch (s) {
    case CompileStatus::Ok: return "ok";
    case CompileStatus::Error: return "error";
    case CompileStatus::Crash: return "crash";
    case CompileStatus::Timeout: return "timeout";
  }
  return "?";
}

const char *to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Crash: return "crash";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::NotRun: return "n/a";
  }
  return "?";
}

const char *to_string(Classification c) {
  switch (c) {
    case Classification::Pass: return "Pass";
    case Classification::CompileError: return "CompileError";
    case Classification::CompilerCrash: return "CompilerCrash";
    case Classification::RuntimeCrash: return "RuntimeCrash";
    case Classification::WrongResult: return "WrongResult";
  }
  return "?";
}

const char *to_string(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::CrossCompiler: return "cross-compiler";
    case Strategy::CrossOptimization: return "cross-optimization";
    case Strategy::CrossVariant: return "cross-variant";
  }
  return "?";
}

namespace {

bool has_vector_march(const std::vector<std::string> &args) {
  for (const auto &a : args) {
    if (a.rfind("-march=rv", 0) != 0) continue;
    // Single-letter extensions come before the first '_'.
    std::string base = a.substr(9);
    base = base.substr(0, base.find('_'));
    if (base.size() > 2 && base.find('v', 2) != std::string::npos) return true;
  }
  return false;
}

std::string env_key(const std::string &label) {
  std::string k;
  for (char c : label)
    k += std::isalnum(static_cast<unsigned char>(c))
             ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
             : '_';
  return k;
}

std::string expand(const std::string &arg, const std::string &src, const std::string &exe,
                   const std::string &opt) {
  std::string out;
  for (std::size_t i = 0; i < arg.size();) {
    if (arg.compare(i, 5, "{src}") == 0) {
      out += src;
      i += 5;
    } else if (arg.compare(i, 5, "{exe}") == 0) {
      out += exe;
      i += 5;
    } else if (arg.compare(i, 5, "{opt}") == 0) {
      out += opt;
      i += 5;
    } else {
      out += arg[i++];
    }
  }
  return out;
}

std::string sanitize(const std::string &s) {
  std::string o;
  for (char c : s) o += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return o;
}

struct Job {
  const ProgramCase *c;
  const CompilerConfig *cfg;
  std::string opt;
  std::string src;
};

RunOutcome execute(const Job &job, const RunOptions &opts) {
  RunOutcome o;
  o.seed = job.c->seed;
  o.mode = job.c->mode;
  o.compiler = job.cfg->label;
  o.opt = job.opt;
  o.source_path = job.src;
  const std::string exe =
      (fs::path(opts.work_dir) / ("case_" + std::to_string(job.c->seed) + "_" +
                                  to_string(job.c->mode) + "_" + sanitize(job.cfg->label) +
                                  "_" + sanitize(job.opt)))
          .string();
  std::vector<std::string> cc;
  for (const auto &a : job.cfg->compile) cc.push_back(expand(a, job.src, exe, job.opt));
  ProcessResult pr = run_process(cc, job.cfg->compile_timeout);
  o.diagnostics = pr.err + pr.out;
  if (pr.timed_out) {
    o.compile = CompileStatus::Timeout;
  } else if (pr.signaled || has_crash_signature(o.diagnostics)) {
    o.compile = CompileStatus::Crash;
    if (pr.signaled) o.diagnostics += "\n[terminated by signal " + std::to_string(pr.signal) + "]";
  } else if (!pr.started || pr.exit_code != 0) {
    o.compile = CompileStatus::Error;
  }
  if (o.compile != CompileStatus::Ok) return o;

  std::vector<std::string> run;
  if (job.cfg->run.empty()) {
    run.push_back(exe);
  } else {
    for (const auto &a : job.cfg->run) run.push_back(expand(a, job.src, exe, job.opt));
  }
  ProcessResult rr = run_process(run, job.cfg->run_timeout);
  o.stdout_text = rr.out;
  if (!rr.err.empty()) o.diagnostics += rr.err;
  if (rr.timed_out) {
    o.run = RunStatus::Timeout;
  } else if (!rr.started || rr.signaled || rr.exit_code != 0) {
    o.run = RunStatus::Crash;
    o.diagnostics += rr.signaled ? "\n[run terminated by signal " + std::to_string(rr.signal) + "]"
                                 : "\n[run exit code " + std::to_string(rr.exit_code) + "]";
  } else {
    o.run = RunStatus::Ok;
  }
  if (!opts.keep_executables) {
    std::error_code ec;
    fs::remove(exe, ec);
  }
  return o;
}

}  // namespace

void validate(const CompilerConfig &c) {
  if (c.label.empty()) throw ConfigError("compiler config without a label");
  if (c.compile.empty()) throw ConfigError("compiler '" + c.label + "' has no compile command");
  if (c.opt_levels.empty()) throw ConfigError("compiler '" + c.label + "' has no opt levels");
  if (!has_vector_march(c.compile))
    throw ConfigError("compiler '" + c.label + "' flags lack a vector -march string");
  if (find_executable(c.compile[0]).empty())
    throw ConfigError("compiler '" + c.label + "': executable not found: " + c.compile[0]);
  if (!c.run.empty() && c.run[0].find("{exe}") == std::string::npos &&
      find_executable(c.run[0]).empty())
    throw ConfigError("compiler '" + c.label + "': emulator not found: " + c.run[0]);
  if (c.compile_timeout <= 0 || c.run_timeout <= 0)
    throw ConfigError("compiler '" + c.label + "': timeouts must be positive");
}

std::vector<CompilerConfig> load_compiler_configs(const nlohmann::json &j) {
  std::vector<CompilerConfig> out;
  const nlohmann::json &list = j.is_object() && j.contains("compilers") ? j["compilers"] : j;
  if (!list.is_array()) throw ConfigError("compiler config: expected a 'compilers' array");
  try {
    for (const auto &e : list) {
      CompilerConfig c;
      c.label = e.at("label").get<std::string>();
      c.compile = e.at("compile").get<std::vector<std::string>>();
      if (e.contains("opt_levels")) c.opt_levels = e["opt_levels"].get<std::vector<std::string>>();
      if (e.contains("run")) c.run = e["run"].get<std::vector<std::string>>();
      if (e.contains("compile_timeout")) c.compile_timeout = e["compile_timeout"].get<double>();
      if (e.contains("run_timeout")) c.run_timeout = e["run_timeout"].get<double>();
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception &ex) {
    throw ConfigError(std::string("compiler config: ") + ex.what());
  }
  std::set<std::string> labels;
  for (const auto &c : out)
    if (!labels.insert(c.label).second) throw ConfigError("duplicate compiler label " + c.label);
  return out;
}

void apply_env_overrides(std::vector<CompilerConfig> &configs) {
  for (auto &c : configs) {
    const std::string k = env_key(c.label);
    if (const char *cc = std::getenv(("RVFUZZ_CC_" + k).c_str()); cc && *cc && !c.compile.empty())
      c.compile[0] = cc;
    if (const char *emu = std::getenv(("RVFUZZ_EMU_" + k).c_str()); emu && *emu) {
      if (c.run.empty()) c.run = {emu, "{exe}"};
      else c.run[0] = emu;
    }
  }
}

bool has_crash_signature(const std::string &d) {
  static const char *kSignatures[] = {
      "internal compiler error", "Internal compiler error", "PLEASE submit a bug report",
      "LLVM ERROR:",             "Segmentation fault",      "Assertion `",
      "Stack dump:",             "compiler bug",
  };
  for (const char *s : kSignatures)
    if (d.find(s) != std::string::npos) return true;
  return false;
}

std::vector<RunOutcome> run_cases(const std::vector<ProgramCase> &cases,
                                  const std::vector<CompilerConfig> &configs,
                                  const RunOptions &opts) {
  if (configs.empty()) throw ConfigError("no compiler configured");
  for (const auto &c : configs) validate(c);
  std::error_code ec;
  fs::create_directories(opts.work_dir, ec);
  if (ec) throw ConfigError("cannot create work directory " + opts.work_dir + ": " + ec.message());

  std::vector<Job> jobs;
  for (const auto &pc : cases) {
    const std::string src = (fs::path(opts.work_dir) / pc.file_name()).string();
    std::ofstream f(src, std::ios::binary | std::ios::trunc);
    f << pc.source;
    if (!f) throw ConfigError("cannot write " + src);
    for (const auto &cfg : configs)
      for (const auto &opt : cfg.opt_levels) jobs.push_back({&pc, &cfg, opt, src});
  }
  std::vector<RunOutcome> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = execute(jobs[i], opts);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opts.jobs, jobs.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  return out;
}

std::vector<RunOutcome> run_case(const ProgramCase &c, const std::vector<CompilerConfig> &configs,
                                 const RunOptions &opts) {
  return run_cases({c}, configs, opts);
}

namespace {

std::string status_of(const RunOutcome &o) {
  switch (o.compile) {
    case CompileStatus::Error: return "compile-error";
    case CompileStatus::Crash: return "compiler-crash";
    case CompileStatus::Timeout: return "compiler-timeout";
    case CompileStatus::Ok: break;
  }
  switch (o.run) {
    case RunStatus::Crash: return "runtime-crash";
    case RunStatus::Timeout: return "runtime-timeout";
    case RunStatus::NotRun: return "not-run";
    case RunStatus::Ok: break;
  }
  return "ok";
}

Witness witness_of(const RunOutcome &o) {
  return {o.mode, o.compiler, o.opt, status_of(o), o.source_path};
}

// Canonical order: mode, then compiler and opt in first-seen order.
struct Layout {
  std::vector<std::string> compilers, opts;
  int compiler_rank(const std::string &s) const {
    return static_cast<int>(std::find(compilers.begin(), compilers.end(), s) - compilers.begin());
  }
  int opt_rank(const std::string &s) const {
    return static_cast<int>(std::find(opts.begin(), opts.end(), s) - opts.begin());
  }
};

bool peers(const RunOutcome &a, const RunOutcome &b, Strategy s) {
  switch (s) {
    case Strategy::CrossOptimization:
      return a.mode == b.mode && a.compiler == b.compiler && a.opt != b.opt;
    case Strategy::CrossCompiler:
      return a.mode == b.mode && a.opt == b.opt && a.compiler != b.compiler;
    case Strategy::CrossVariant:
      return a.compiler == b.compiler && a.opt == b.opt && a.mode != b.mode;
    case Strategy::None: break;
  }
  return false;
}

// First line carrying the crash message, with digits and paths elided so
// that one bug hit from different seeds shares a key.
std::string crash_key(const std::string &diag) {
  std::size_t pos = std::string::npos;
  for (const char *s : {"internal compiler error", "Internal compiler error", "LLVM ERROR:",
                        "Assertion `", "Segmentation fault", "signal"}) {
    pos = diag.find(s);
    if (pos != std::string::npos) break;
  }
  std::string line;
  if (pos != std::string::npos) {
    std::size_t b = diag.rfind('\n', pos);
    b = b == std::string::npos ? 0 : b + 1;
    std::size_t e = diag.find('\n', pos);
    line = diag.substr(b, e == std::string::npos ? std::string::npos : e - b);
  }
  static const std::regex kPath(R"([^\s:'"]*/[^\s:'"]*)");
  static const std::regex kDigits(R"([0-9]+)");
  line = std::regex_replace(line, kPath, "<path>");
  line = std::regex_replace(line, kDigits, "N");
  return line;
}

}  // namespace

std::vector<Verdict> compare(const std::vector<RunOutcome> &outcomes) {
  std::vector<Verdict> out;
  if (outcomes.empty()) return out;
  Layout lay;
  for (const auto &o : outcomes) {
    if (lay.compiler_rank(o.compiler) == static_cast<int>(lay.compilers.size()))
      lay.compilers.push_back(o.compiler);
    if (lay.opt_rank(o.opt) == static_cast<int>(lay.opts.size())) lay.opts.push_back(o.opt);
  }
  std::vector<const RunOutcome *> order;
  for (const auto &o : outcomes) order.push_back(&o);
  std::stable_sort(order.begin(), order.end(), [&](const RunOutcome *a, const RunOutcome *b) {
    if (a->mode != b->mode) return a->mode < b->mode;
    int ca = lay.compiler_rank(a->compiler), cb = lay.compiler_rank(b->compiler);
    if (ca != cb) return ca < cb;
    return lay.opt_rank(a->opt) < lay.opt_rank(b->opt);
  });
  const std::uint64_t seed = outcomes.front().seed;
  static constexpr Strategy kStrategies[] = {Strategy::CrossOptimization, Strategy::CrossCompiler,
                                             Strategy::CrossVariant};

  auto make = [&](Classification c, Strategy s, const RunOutcome &bad, const RunOutcome *ref,
                  std::string key) {
    Verdict v;
    v.seed = seed;
    v.mode = bad.mode;
    v.classification = c;
    v.strategy = s;
    v.witnesses.push_back(witness_of(bad));
    if (ref) v.witnesses.push_back(witness_of(*ref));
    v.signature = std::string(to_string(c)) + "|" + to_string(s) + "|" + bad.compiler + "|" +
                  bad.opt;
    if (s == Strategy::CrossVariant) v.signature += std::string("|") + to_string(bad.mode);
    if (ref) v.signature += "|vs|" + ref->compiler + "|" + ref->opt;
    if (!key.empty()) v.signature += "|" + key;
    out.push_back(std::move(v));
  };

  // Failures of a single job: the reference is the first peer that got
  // further, searched along opt, compiler, then variant.
  auto got_further = [](const RunOutcome &ref, Classification c) {
    if (c == Classification::RuntimeCrash) return ref.run == RunStatus::Ok;
    return ref.compile == CompileStatus::Ok;
  };
  for (const RunOutcome *o : order) {
    Classification c;
    std::string key, detail;
    if (o->compile == CompileStatus::Crash || o->compile == CompileStatus::Timeout) {
      c = Classification::CompilerCrash;
      key = o->compile == CompileStatus::Timeout ? "timeout" : crash_key(o->diagnostics);
    } else if (o->compile == CompileStatus::Error) {
      c = Classification::CompileError;
    } else if (o->run == RunStatus::Crash || o->run == RunStatus::Timeout) {
      c = Classification::RuntimeCrash;
      key = o->run == RunStatus::Timeout ? "timeout" : "";
    } else {
      continue;
    }
    const RunOutcome *ref = nullptr;
    Strategy strat = Strategy::None;
    for (Strategy s : kStrategies) {
      for (const RunOutcome *p : order)
        if (peers(*o, *p, s) && got_further(*p, c)) {
          ref = p;
          break;
        }
      if (ref) {
        strat = s;
        break;
      }
    }
    make(c, strat, *o, ref, key);
  }

  // Output comparison among completed runs: each run against the first
  // completed peer of its group, independently per strategy.
  for (Strategy s : kStrategies) {
    for (const RunOutcome *o : order) {
      if (o->run != RunStatus::Ok) continue;
      const RunOutcome *base = nullptr;
      for (const RunOutcome *p : order) {
        if (p == o) break;
        if (p->run == RunStatus::Ok && peers(*o, *p, s)) {
          base = p;
          break;
        }
      }
      if (base && base->stdout_text != o->stdout_text)
        make(Classification::WrongResult, s, *o, base, "");
    }
  }

  if (out.empty()) {
    Verdict v;
    v.seed = seed;
    v.mode = order.front()->mode;
    v.signature = "Pass";
    out.push_back(std::move(v));
  }
  return out;
}

bool ReportSummary::all_pass() const {
  for (int c = 1; c < 5; ++c)
    if (counts[c]) return false;
  return true;
}

nlohmann::json verdict_record(const Verdict &v, const std::string &config_snapshot) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto &x : v.witnesses)
    w.push_back({{"mode", to_string(x.mode)},
                 {"compiler", x.compiler},
                 {"opt", x.opt},
                 {"status", x.status}});
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto &x : v.witnesses)
    if (!x.source_path.empty() &&
        std::find(artifacts.begin(), artifacts.end(), x.source_path) == artifacts.end())
      artifacts.push_back(x.source_path);
  nlohmann::json j = {{"seed", v.seed},
                      {"mode", to_string(v.mode)},
                      {"strategy", to_string(v.strategy)},
                      {"classification", to_string(v.classification)},
                      {"witnesses", w},
                      {"artifacts", artifacts},
                      {"signature", v.signature}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (!config_snapshot.empty()) j["config"] = nlohmann::json::parse(config_snapshot);
  return j;
}

std::optional<Verdict> verdict_from_record(const nlohmann::json &j) {
  if (!j.is_object() || j.contains("summary") || !j.contains("seed")) return std::nullopt;
  Verdict v;
  v.seed = j.at("seed").get<std::uint64_t>();
  auto mode = parse_mode(j.at("mode").get<std::string>());
  if (!mode) return std::nullopt;
  v.mode = *mode;
  const std::string cls = j.at("classification").get<std::string>();
  for (Classification c : kAllClassifications)
    if (cls == to_string(c)) v.classification = c;
  const std::string strat = j.at("strategy").get<std::string>();
  for (Strategy s : {Strategy::None, Strategy::CrossCompiler, Strategy::CrossOptimization,
                     Strategy::CrossVariant})
    if (strat == to_string(s)) v.strategy = s;
  for (const auto &w : j.at("witnesses")) {
    Witness x;
    if (auto m = parse_mode(w.at("mode").get<std::string>())) x.mode = *m;
    x.compiler = w.at("compiler").get<std::string>();
    x.opt = w.at("opt").get<std::string>();
    x.status = w.at("status").get<std::string>();
    v.witnesses.push_back(std::move(x));
  }
  v.signature = j.value("signature", "");
  v.detail = j.value("detail", "");
  return v;
}

nlohmann::json summary_record(const ReportSummary &s) {
  nlohmann::json counts = nlohmann::json::object();
  for (Classification c : kAllClassifications) counts[to_string(c)] = s.counts[static_cast<int>(c)];
  return {{"summary", true},
          {"cases", s.cases},
          {"counts", counts},
          {"unique_signatures", s.unique_signatures}};
}

ReportSummary summarize(const std::vector<nlohmann::json> &records) {
  ReportSummary s;
  std::set<std::uint64_t> seeds;
  std::set<std::string> sigs;
  for (const auto &r : records) {
    auto v = verdict_from_record(r);
    if (!v) continue;
    seeds.insert(v->seed);
    ++s.counts[static_cast<int>(v->classification)];
    if (v->classification != Classification::Pass) sigs.insert(v->signature);
  }
  s.cases = seeds.size();
  s.unique_signatures = sigs.size();
  return s;
}

ReportSummary report(const std::vector<Verdict> &verdicts, std::ostream &sink,
                     const std::string &config_snapshot) {
  std::vector<nlohmann::json> records;
  for (const auto &v : verdicts) {
    records.push_back(verdict_record(v, config_snapshot));
    sink << records.back().dump() << "\n";
  }
  ReportSummary s = summarize(records);
  sink << summary_record(s).dump() << "\n";
  sink.flush();
  if (!sink) throw std::runtime_error("report sink is not writable");
  return s;
}

}  // namespace rvfuzz
