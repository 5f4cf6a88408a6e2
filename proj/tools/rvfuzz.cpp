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

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "rvfuzz/cli.hpp"
#include "rvfuzz/coverage.hpp"

using namespace rvfuzz;

namespace {

struct Flags {
  std::string config, listing, listing_kind, ratio_type, seq_len, data_len, seeds, modes;
  std::string compilers, out_dir, report;
  std::uint32_t vlen = 0, elen = 0, vlen_max = 0;
  double coin_bias = -1;
  unsigned jobs = 0;
  bool oracle_profile = false, self_check = false, resume = false, keep_passing = false;
};

void add_common(CLI::App *cmd, Flags &f) {
  cmd->add_option("--config", f.config, "JSON run config; flags override it");
  cmd->add_option("--listing", f.listing, "prototype listing file");
  cmd->add_option("--listing-kind", f.listing_kind,
                  "built-in listing: explicit, explicit-policy, implicit, implicit-policy, "
                  "explicit-all");
  cmd->add_option("--ratio-type", f.ratio_type, "vector type fixing the SEW/LMUL ratio, e.g. i8m1");
  cmd->add_option("--seq-len", f.seq_len, "operations per loop: N or LO..HI");
  cmd->add_option("--data-len", f.data_len, "elements per array: N or LO..HI");
  cmd->add_option("--seeds,--seed", f.seeds, "seed or LO..HI");
  cmd->add_option("--modes", f.modes, "comma-separated: allin,unit,random");
  cmd->add_option("--vlen", f.vlen, "VLEN for the evaluator self-check");
  cmd->add_option("--elen", f.elen, "ELEN");
  cmd->add_option("--vlen-max", f.vlen_max, "largest VLEN programs must stay defined on");
  cmd->add_option("--coin-bias", f.coin_bias, "fresh-register probability in allocation");
  cmd->add_flag("--oracle-profile", f.oracle_profile,
                "restrict intrinsics to the reference evaluator subset");
  cmd->add_option("--out,-o", f.out_dir, "output directory");
}

RunConfig resolve(const Flags &f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_run_config_file(f.config);
  if (!f.listing.empty()) c.listing_path = f.listing;
  if (!f.listing_kind.empty()) {
    c.listing_kind = f.listing_kind;
    if (f.listing.empty()) c.listing_path.clear();
  }
  if (!f.ratio_type.empty()) c.ratio_type = f.ratio_type;
  if (!f.seq_len.empty()) c.seq_len = parse_range(f.seq_len);
  if (!f.data_len.empty()) c.data_len = parse_range(f.data_len);
  if (!f.seeds.empty()) c.seeds = parse_range(f.seeds);
  if (!f.modes.empty()) {
    c.modes.clear();
    std::size_t b = 0;
    while (b <= f.modes.size()) {
      std::size_t e = f.modes.find(',', b);
      if (e == std::string::npos) e = f.modes.size();
      auto m = parse_mode(f.modes.substr(b, e - b));
      if (!m) throw ConfigError("unknown mode '" + f.modes.substr(b, e - b) + "'");
      c.modes.push_back(*m);
      b = e + 1;
    }
  }
  if (f.vlen) c.machine.vlen = f.vlen;
  if (f.elen) c.machine.elen = f.elen;
  if (f.vlen_max) c.vlen_max = f.vlen_max;
  if (f.coin_bias >= 0) c.coin_bias = f.coin_bias;
  if (f.oracle_profile) c.oracle_profile = true;
  if (f.self_check) c.oracle_self_check = true;
  if (!f.compilers.empty()) c.compilers_path = f.compilers;
  if (!f.out_dir.empty()) c.out_dir = f.out_dir;
  if (!f.report.empty()) c.report_path = f.report;
  if (f.jobs) c.jobs = f.jobs;
  if (f.resume) c.resume = true;
  if (f.keep_passing) c.keep_passing = true;
  return c;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"rvfuzz: random RVV intrinsic program generator and differential tester"};
  app.require_subcommand(1);
  Flags f;

  auto *gen = app.add_subcommand("generate", "write programs and metadata sidecars");
  add_common(gen, f);

  auto *fuzz = app.add_subcommand("fuzz", "generate, compile, run and compare");
  add_common(fuzz, f);
  fuzz->add_option("--compilers", f.compilers, "compiler config JSON");
  fuzz->add_option("--report", f.report, "report file (default <out>/report.jsonl)");
  fuzz->add_option("--jobs,-j", f.jobs, "parallel compile/run jobs");
  fuzz->add_flag("--resume", f.resume, "skip seeds already in the report");
  fuzz->add_flag("--self-check", f.self_check, "check evaluator consistency before compiling");
  fuzz->add_flag("--keep-passing", f.keep_passing, "keep sources of passing seeds");

  CoverageOptions cov_opts;
  auto *cov = app.add_subcommand("coverage", "intrinsic coverage of files or a seed range");
  add_common(cov, f);
  cov->add_option("paths", cov_opts.paths, "programs or directories (default: generate seeds)");
  cov->add_option("--records", cov_opts.records_path, "line-delimited per-intrinsic records");
  cov->add_flag("--per-kind", cov_opts.per_kind,
                "one campaign per built-in listing kind, with a combined total");

  ReplayOptions rep_opts;
  std::size_t rec_index = 0;
  std::uint64_t rep_seed = 0;
  std::string rep_mode;
  auto *rep = app.add_subcommand("replay", "regenerate a reported case and rerun its witnesses");
  rep->add_option("report", rep_opts.report_path, "report file")->required();
  rep->add_option("--config", f.config, "JSON run config");
  rep->add_option("--listing", f.listing, "prototype listing file");
  rep->add_option("--listing-kind", f.listing_kind, "built-in listing");
  rep->add_option("--compilers", f.compilers, "compiler config JSON");
  rep->add_option("--out,-o", f.out_dir, "output directory");
  auto *idx_opt = rep->add_option("--index", rec_index, "0-based verdict record");
  auto *seed_opt = rep->add_option("--case-seed", rep_seed, "pick the record of this seed");
  auto *mode_opt = rep->add_option("--case-mode", rep_mode, "pick the record of this mode");
  rep->add_option("--archive", rep_opts.archive_path, "archived source to compare against");

  std::string list_kind = "explicit-all", list_out;
  auto *lst = app.add_subcommand("listing", "print a built-in prototype listing");
  lst->add_option("--kind", list_kind, "explicit, explicit-policy, implicit, implicit-policy, explicit-all");
  lst->add_option("--out,-o", list_out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*gen) {
      cmd_generate(resolve(f), std::cerr);
      return kExitPass;
    }
    if (*fuzz) return cmd_fuzz(resolve(f), std::cerr);
    if (*cov) return cmd_coverage(resolve(f), cov_opts, std::cout);
    if (*rep) {
      if (*idx_opt) rep_opts.record_index = rec_index;
      if (*seed_opt) rep_opts.seed = rep_seed;
      if (*mode_opt) {
        rep_opts.mode = parse_mode(rep_mode);
        if (!rep_opts.mode) throw ConfigError("unknown mode '" + rep_mode + "'");
      }
      return cmd_replay(resolve(f), rep_opts, std::cout);
    }
    if (*lst) {
      std::string text = builtin_listing(list_kind);
      if (list_out.empty()) {
        std::cout << text;
      } else {
        std::FILE *o = std::fopen(list_out.c_str(), "wb");
        if (!o) throw ConfigError("cannot write " + list_out);
        std::fwrite(text.data(), 1, text.size(), o);
        std::fclose(o);
      }
      return kExitPass;
    }
  } catch (const ConfigError &e) {
    std::cerr << "rvfuzz: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception &e) {
    std::cerr << "rvfuzz: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitPass;
}
