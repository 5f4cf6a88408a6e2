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

#include "rvfuzz/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rvfuzz/coverage.hpp"
#include "rvfuzz/listing_gen.hpp"
#include "rvfuzz/oracle.hpp"

namespace rvfuzz {

namespace fs = std::filesystem;
using nlohmann::json;

Range parse_range(const std::string &text) {
  auto num = [&](const std::string &s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("invalid range '" + text + "'");
    try {
      return std::stoull(s);
    } catch (const std::exception &) {
      throw ConfigError("invalid range '" + text + "'");
    }
  };
  Range r;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = num(text);
  } else {
    r.lo = num(text.substr(0, dots));
    r.hi = num(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw ConfigError("empty range '" + text + "'");
  return r;
}

Range range_from_json(const json &j) {
  auto count = [](const json &v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; };
  if (count(j)) return {j.get<std::uint64_t>(), j.get<std::uint64_t>()};
  if (j.is_string()) return parse_range(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && count(j[0]) && count(j[1])) {
    Range r{j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>()};
    if (r.lo > r.hi) throw ConfigError("empty range " + j.dump());
    return r;
  }
  throw ConfigError("invalid range " + j.dump());
}

RunConfig load_run_config(const json &j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto &[k, v] : j.items()) {
      if (k == "listing") c.listing_path = v.get<std::string>();
      else if (k == "listing_kind") c.listing_kind = v.get<std::string>();
      else if (k == "vlen") c.machine.vlen = v.get<std::uint32_t>();
      else if (k == "elen") c.machine.elen = v.get<std::uint32_t>();
      else if (k == "ratio_type") {
        if (!v.is_null()) c.ratio_type = v.get<std::string>();
      } else if (k == "seq_len") c.seq_len = range_from_json(v);
      else if (k == "data_len") c.data_len = range_from_json(v);
      else if (k == "seeds" || k == "seed") c.seeds = range_from_json(v);
      else if (k == "modes") {
        c.modes.clear();
        for (const auto &m : v) {
          auto mode = parse_mode(m.get<std::string>());
          if (!mode) throw ConfigError("unknown mode " + m.dump());
          c.modes.push_back(*mode);
        }
      } else if (k == "coin_bias") c.coin_bias = v.get<double>();
      else if (k == "vlen_max") c.vlen_max = v.get<std::uint32_t>();
      else if (k == "oracle_profile") c.oracle_profile = v.get<bool>();
      else if (k == "oracle_self_check") c.oracle_self_check = v.get<bool>();
      else if (k == "compilers") c.compilers_path = v.get<std::string>();
      else if (k == "out_dir") c.out_dir = v.get<std::string>();
      else if (k == "report") c.report_path = v.get<std::string>();
      else if (k == "jobs") c.jobs = v.get<unsigned>();
      else if (k == "keep_passing") c.keep_passing = v.get<bool>();
      else throw ConfigError("unknown config key '" + k + "'");
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path);
  try {
    return load_run_config(json::parse(f));
  } catch (const json::parse_error &e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

std::string builtin_listing(const std::string &kind) {
  if (kind == "explicit-all") return generate_explicit_listing();
  for (ListingKind k : {ListingKind::Explicit, ListingKind::ExplicitPolicy, ListingKind::Implicit,
                        ListingKind::ImplicitPolicy})
    if (kind == to_string(k)) return generate_listing(k);
  throw ConfigError("unknown listing kind '" + kind +
                    "' (explicit, explicit-policy, implicit, implicit-policy, explicit-all)");
}

Listing load_listing(const RunConfig &cfg) {
  std::string text;
  if (!cfg.listing_path.empty()) {
    std::ifstream f(cfg.listing_path, std::ios::binary);
    if (!f) throw ConfigError("cannot read listing " + cfg.listing_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    text = builtin_listing(cfg.listing_kind);
  }
  Listing l;
  try {
    l.prototypes = std::make_shared<const std::vector<IntrinsicDef>>(parse_prototypes(text));
    l.definitions = std::make_shared<const std::vector<IntrinsicDef>>(parse_definitions(text));
  } catch (const ParseError &e) {
    throw ConfigError("listing: " + std::string(e.what()));
  }
  return l;
}

GenConfig gen_config(const RunConfig &cfg) {
  cfg.machine.validate();
  GenConfig g;
  g.ratio_type = cfg.ratio_type;
  g.seq_len_min = cfg.seq_len.lo;
  g.seq_len_max = cfg.seq_len.hi;
  g.data_len_min = cfg.data_len.lo;
  g.data_len_max = cfg.data_len.hi;
  g.coin_bias = cfg.coin_bias;
  g.vlen_max = cfg.vlen_max;
  g.oracle_profile = cfg.oracle_profile;
  return g;
}

namespace {

Generator make_generator(const RunConfig &cfg, const Listing &l) {
  try {
    return Generator(l.prototypes, gen_config(cfg));
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
}

json sidecar(const ProgramCase &pc) {
  json manifest = json::array();
  for (const auto &e : pc.manifest)
    manifest.push_back({{"array", pc.ir.arrays.at(e.array).name}, {"index", e.index}});
  return {{"seed", pc.seed},
          {"mode", to_string(pc.mode)},
          {"file", pc.file_name()},
          {"ratio_type", pc.ir.ratio_type.token()},
          {"data_len", pc.ir.data_len},
          {"config", json::parse(pc.config_snapshot)},
          {"manifest", manifest}};
}

void write_file(const fs::path &p, const std::string &text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw ConfigError("cannot write " + p.string());
}

std::vector<CompilerConfig> load_compilers(const RunConfig &cfg) {
  if (cfg.compilers_path.empty()) throw ConfigError("no compiler config given (--compilers)");
  std::ifstream f(cfg.compilers_path);
  if (!f) throw ConfigError("cannot read compiler config " + cfg.compilers_path);
  std::vector<CompilerConfig> cs;
  try {
    cs = load_compiler_configs(json::parse(f));
  } catch (const json::parse_error &e) {
    throw ConfigError("compiler config: " + std::string(e.what()));
  }
  apply_env_overrides(cs);
  for (const auto &c : cs) validate(c);
  return cs;
}

// Poison- and variant-independence of the evaluator output; empty when the
// case is outside the evaluator subset or all agree.
std::string self_check(const std::vector<ProgramCase> &cases, std::uint32_t vlen) {
  std::string ref;
  for (const auto &pc : cases) {
    for (std::uint8_t poison : {std::uint8_t{0x00}, std::uint8_t{0xff}}) {
      EvalResult r;
      try {
        r = evaluate(pc.ir, {vlen, poison});
      } catch (const BoundsError &e) {
        return std::string("out-of-bounds access: ") + e.what();
      }
      if (!r.ok()) return {};
      if (ref.empty()) ref = r.output;
      else if (r.output != ref)
        return std::string("evaluator output differs for mode ") + to_string(pc.mode);
    }
  }
  return {};
}

struct ExistingReport {
  std::vector<std::string> lines;  // verdict records, as written
  std::set<std::uint64_t> seeds;
};

ExistingReport read_report(const std::string &path) {
  ExistingReport r;
  std::ifstream f(path, std::ios::binary);
  if (!f) return r;
  std::ostringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  std::vector<std::pair<std::uint64_t, std::string>> recs;
  std::size_t b = 0;
  while (b < text.size()) {
    std::size_t e = text.find('\n', b);
    // A line without its newline was cut off mid-write.
    if (e == std::string::npos) break;
    std::string line = text.substr(b, e - b);
    b = e + 1;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.contains("summary") || !j.contains("seed"))
      continue;
    recs.emplace_back(j["seed"].get<std::uint64_t>(), line);
  }
  // Records of a seed are written together; drop a trailing seed that was
  // interrupted before its block completed.
  if (b < text.size() && !recs.empty()) {
    const std::uint64_t last = recs.back().first;
    while (!recs.empty() && recs.back().first == last) recs.pop_back();
  }
  for (auto &[s, l] : recs) {
    r.seeds.insert(s);
    r.lines.push_back(std::move(l));
  }
  return r;
}

}  // namespace

std::vector<std::string> cmd_generate(const RunConfig &cfg, std::ostream &log) {
  const Listing l = load_listing(cfg);
  const Generator gen = make_generator(cfg, l);
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);
  std::vector<std::string> files;
  for (std::uint64_t s = cfg.seeds.lo;; ++s) {
    const CaseSkeleton sk = gen.build(s);
    for (ScheduleMode m : cfg.modes) {
      const ProgramCase pc = gen.emit(sk, m);
      const fs::path c = fs::path(cfg.out_dir) / pc.file_name();
      write_file(c, pc.source);
      fs::path side = c;
      side.replace_extension(".json");
      write_file(side, sidecar(pc).dump(2) + "\n");
      files.push_back(c.string());
    }
    if (s == cfg.seeds.hi) break;
  }
  log << "wrote " << files.size() << " programs to " << cfg.out_dir << "\n";
  return files;
}

int run_campaign(const RunConfig &cfg, const Listing &l,
                 const std::vector<CompilerConfig> &compilers, std::ostream &log) {
  if (compilers.empty()) throw ConfigError("no compiler configured");
  for (const auto &c : compilers) validate(c);
  const Generator gen = make_generator(cfg, l);
  const fs::path out(cfg.out_dir);
  const fs::path cases_dir = out / "cases";
  std::error_code ec;
  fs::create_directories(cases_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);
  const std::string report_path =
      cfg.report_path.empty() ? (out / "report.jsonl").string() : cfg.report_path;

  ExistingReport prev;
  if (cfg.resume) prev = read_report(report_path);
  std::vector<std::string> lines;
  for (const auto &line : prev.lines) {
    auto s = json::parse(line)["seed"].get<std::uint64_t>();
    if (s >= cfg.seeds.lo && s <= cfg.seeds.hi) lines.push_back(line);
  }
  {
    std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write report " + report_path);
    for (const auto &line : lines) f << line << "\n";
  }
  std::ofstream sink(report_path, std::ios::binary | std::ios::app);
  if (!sink) throw ConfigError("cannot write report " + report_path);

  std::size_t self_check_failures = 0;
  RunOptions ro{cases_dir.string(), std::max(1u, cfg.jobs), false};
  for (std::uint64_t s = cfg.seeds.lo;; ++s) {
    if (!prev.seeds.count(s)) {
      const CaseSkeleton sk = gen.build(s);
      std::vector<ProgramCase> cases;
      for (ScheduleMode m : cfg.modes) cases.push_back(gen.emit(sk, m));
      if (cfg.oracle_self_check) {
        std::string why = self_check(cases, cfg.machine.vlen);
        if (!why.empty()) {
          ++self_check_failures;
          log << "seed " << s << ": self-check failed: " << why << "\n";
        }
      }
      auto outcomes = run_cases(cases, compilers, ro);
      // Artifact paths relative to the output directory.
      for (auto &o : outcomes) o.source_path = fs::relative(o.source_path, out).generic_string();
      const auto verdicts = compare(outcomes);
      std::string block;
      bool all_pass = true;
      for (const auto &v : verdicts) {
        block += verdict_record(v, gen.snapshot()).dump() + "\n";
        all_pass = all_pass && v.classification == Classification::Pass;
      }
      sink << block;
      sink.flush();
      if (!sink) throw std::runtime_error("report sink is not writable");
      for (const auto &v : verdicts)
        if (v.classification != Classification::Pass)
          log << "seed " << s << ": " << to_string(v.classification) << " ("
              << to_string(v.strategy) << ")\n";
      if (all_pass && !cfg.keep_passing)
        for (const auto &pc : cases) fs::remove(cases_dir / pc.file_name(), ec);
    }
    if (s == cfg.seeds.hi) break;
  }
  sink.close();

  std::vector<json> records;
  {
    std::ifstream f(report_path, std::ios::binary);
    for (std::string line; std::getline(f, line);) records.push_back(json::parse(line));
  }
  const ReportSummary sum = summarize(records);
  std::ofstream(report_path, std::ios::binary | std::ios::app) << summary_record(sum).dump()
                                                                << "\n";
  log << "seeds " << sum.cases;
  for (Classification c : kAllClassifications)
    log << ", " << to_string(c) << " " << sum.counts[static_cast<int>(c)];
  log << "\nreport: " << report_path << "\n";
  if (!sum.all_pass() || self_check_failures) return kExitFindings;
  return kExitPass;
}

int cmd_fuzz(const RunConfig &cfg, std::ostream &log) {
  const auto compilers = load_compilers(cfg);
  return run_campaign(cfg, load_listing(cfg), compilers, log);
}

int cmd_coverage(const RunConfig &cfg, const CoverageOptions &opts, std::ostream &out) {
  std::ofstream records;
  if (!opts.records_path.empty()) {
    records.open(opts.records_path, std::ios::binary | std::ios::trunc);
    if (!records) throw ConfigError("cannot write " + opts.records_path);
  }
  auto emit = [&](const std::string &title, const CoverageReport &r,
                  const std::vector<IntrinsicDef> &defs) {
    out << "== " << title << "\n" << format_coverage_table(r, defs);
    if (records) records << format_coverage_records(r, defs);
  };

  if (!opts.paths.empty()) {
    const Listing l = load_listing(cfg);
    CoverageCounter counter(*l.definitions);
    std::vector<fs::path> files;
    for (const auto &p : opts.paths) {
      if (fs::is_directory(p)) {
        for (const auto &e : fs::recursive_directory_iterator(p))
          if (e.is_regular_file() && e.path().extension() == ".c") files.push_back(e.path());
      } else if (fs::is_regular_file(p)) {
        files.emplace_back(p);
      } else {
        throw ConfigError("no such file or directory: " + p);
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
      std::ifstream in(f, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      counter.add(ss.str());
    }
    emit(cfg.listing_path.empty() ? cfg.listing_kind : cfg.listing_path, counter.report(),
         *l.definitions);
    return kExitPass;
  }

  // One program per seed; its scheduling variants use the same intrinsics.
  auto campaign = [&](const RunConfig &c) {
    const Listing l = load_listing(c);
    const Generator gen = make_generator(c, l);
    CoverageCounter counter(*l.definitions);
    for (std::uint64_t s = c.seeds.lo;; ++s) {
      counter.add(gen.generate(s, c.modes.front()).source);
      if (s == c.seeds.hi) break;
    }
    return std::make_pair(l, counter.report());
  };
  if (!opts.per_kind) {
    auto [l, r] = campaign(cfg);
    emit(cfg.listing_path.empty() ? cfg.listing_kind : cfg.listing_path, r, *l.definitions);
    return kExitPass;
  }
  std::uint64_t covered = 0, weight = 0;
  for (const char *kind : {"explicit", "explicit-policy", "implicit", "implicit-policy"}) {
    RunConfig c = cfg;
    c.listing_path.clear();
    c.listing_kind = kind;
    auto [l, r] = campaign(c);
    emit(kind, r, *l.definitions);
    covered += r.covered;
    weight += r.total_weight;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "== total %llu / %llu = %.2f%%\n",
                static_cast<unsigned long long>(covered), static_cast<unsigned long long>(weight),
                weight ? 100.0 * double(covered) / double(weight) : 0.0);
  out << buf;
  return kExitPass;
}

int cmd_replay(const RunConfig &cfg, const ReplayOptions &opts, std::ostream &out) {
  std::ifstream f(opts.report_path, std::ios::binary);
  if (!f) throw ConfigError("cannot read report " + opts.report_path);
  std::vector<json> recs;
  for (std::string line; std::getline(f, line);) {
    json j = json::parse(line, nullptr, false);
    if (verdict_from_record(j)) recs.push_back(std::move(j));
  }
  const json *pick = nullptr;
  if (opts.record_index) {
    if (*opts.record_index >= recs.size()) throw ConfigError("record index out of range");
    pick = &recs[*opts.record_index];
  } else {
    for (const auto &r : recs) {
      auto v = verdict_from_record(r);
      if (opts.seed && v->seed != *opts.seed) continue;
      if (opts.mode && v->mode != *opts.mode) continue;
      if (!opts.seed && v->classification == Classification::Pass) continue;
      pick = &r;
      break;
    }
  }
  if (!pick) throw ConfigError("no matching record in " + opts.report_path);
  const Verdict v = *verdict_from_record(*pick);
  if (!pick->contains("config")) throw ConfigError("record carries no config snapshot");
  const std::string snapshot = (*pick)["config"].dump();

  const Listing l = load_listing(cfg);
  GenConfig gc = gen_config_from_snapshot(snapshot);
  const Generator gen(l.prototypes, gc);
  const std::string recorded = (*pick)["config"].value("listing_digest", "");
  if (gen.listing_digest() != recorded) {
    out << "refusing to replay: listing digest " << gen.listing_digest()
        << " does not match the recorded " << recorded << "\n";
    return kExitConfigError;
  }
  const CaseSkeleton sk = gen.build(v.seed);
  const ProgramCase pc = gen.emit(sk, v.mode);
  out << "seed " << v.seed << " mode " << to_string(v.mode) << ": "
      << to_string(v.classification) << " (" << to_string(v.strategy) << ")\n";
  if (!opts.archive_path.empty()) {
    std::ifstream a(opts.archive_path, std::ios::binary);
    if (!a) throw ConfigError("cannot read archive " + opts.archive_path);
    std::ostringstream ss;
    ss << a.rdbuf();
    if (ss.str() != pc.source) {
      out << "regenerated source differs from " << opts.archive_path << "\n";
      return kExitFindings;
    }
    out << "regenerated source is byte-identical to " << opts.archive_path << "\n";
  }
  const fs::path dir = fs::path(cfg.out_dir) / "replay";
  fs::create_directories(dir);
  write_file(dir / pc.file_name(), pc.source);
  out << "wrote " << (dir / pc.file_name()).string() << "\n";
  if (cfg.compilers_path.empty()) return kExitPass;

  // Rerun the witnesses, or the full matrix of the seed for a Pass record.
  auto compilers = load_compilers(cfg);
  std::vector<ProgramCase> cases;
  std::vector<RunOutcome> outcomes;
  RunOptions ro{dir.string(), std::max(1u, cfg.jobs), false};
  if (v.witnesses.empty()) {
    for (ScheduleMode m : cfg.modes) cases.push_back(gen.emit(sk, m));
    outcomes = run_cases(cases, compilers, ro);
  } else {
    for (const auto &w : v.witnesses)
      if (std::none_of(compilers.begin(), compilers.end(),
                       [&](const CompilerConfig &c) { return c.label == w.compiler; }))
        throw ConfigError("witness compiler '" + w.compiler + "' not configured");
    // Canonical matrix order keeps the reference side first, as in the
    // original comparison.
    for (ScheduleMode m : kAllModes)
      for (const auto &c : compilers)
        for (const auto &opt : c.opt_levels) {
          bool wanted = std::any_of(v.witnesses.begin(), v.witnesses.end(), [&](const Witness &w) {
            return w.mode == m && w.compiler == c.label && w.opt == opt;
          });
          if (!wanted) continue;
          CompilerConfig one = c;
          one.opt_levels = {opt};
          auto o = run_case(gen.emit(sk, m), {one}, ro);
          outcomes.insert(outcomes.end(), o.begin(), o.end());
        }
  }
  const auto verdicts = compare(outcomes);
  bool pass = true;
  for (const auto &nv : verdicts) {
    out << verdict_record(nv, {}).dump() << "\n";
    pass = pass && nv.classification == Classification::Pass;
  }
  return pass ? kExitPass : kExitFindings;
}

}  // namespace rvfuzz
