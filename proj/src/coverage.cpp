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

#include "rvfuzz/coverage.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rvfuzz {

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

CoverageCounter::CoverageCounter(const std::vector<IntrinsicDef> &defs)
    : defs_(&defs), counts_(defs.size(), 0) {
  if (defs.empty()) throw std::invalid_argument("coverage needs at least one definition");
  index_.reserve(defs.size());
  for (std::size_t i = 0; i < defs.size(); ++i) index_.emplace(defs[i].full_name, i);
}

// Maximal identifier tokens: a name embedded in a longer identifier never
// matches, so longer names win over their prefixes.
void CoverageCounter::add(std::string_view text) {
  ++corpus_size_;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!ident_start(text[i])) {
      // Skip numbers glued to letters ("0x1f") as one token.
      if (text[i] >= '0' && text[i] <= '9')
        while (i < n && ident_char(text[i])) ++i;
      else
        ++i;
      continue;
    }
    std::size_t b = i;
    while (i < n && ident_char(text[i])) ++i;
    auto it = index_.find(text.substr(b, i - b));
    if (it != index_.end()) ++counts_[it->second];
  }
}

void CoverageCounter::merge(const CoverageCounter &other) {
  if (other.defs_ != defs_) throw std::invalid_argument("merging counters over different listings");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  corpus_size_ += other.corpus_size_;
}

CoverageReport CoverageCounter::report() const {
  CoverageReport r;
  r.corpus_size = corpus_size_;
  r.entries.reserve(defs_->size());
  for (std::size_t i = 0; i < defs_->size(); ++i) {
    const auto &d = (*defs_)[i];
    CoverageEntry e{d.full_name, counts_[i], d.alias_count};
    r.covered += e.contribution();
    r.total_weight += e.weight;
    r.entries.push_back(std::move(e));
  }
  return r;
}

CoverageReport compute_coverage(const std::vector<std::string> &corpus,
                                const std::vector<IntrinsicDef> &defs) {
  CoverageCounter c(defs);
  for (const auto &p : corpus) c.add(p);
  return c.report();
}

std::array<FamilyCoverage, kFamilyCount> category_breakdown(
    const CoverageReport &report, const std::vector<IntrinsicDef> &defs) {
  std::array<FamilyCoverage, kFamilyCount> out{};
  for (std::size_t i = 0; i < report.entries.size() && i < defs.size(); ++i) {
    auto &f = out[static_cast<int>(family_of(defs[i]))];
    f.covered += report.entries[i].contribution();
    f.weight += report.entries[i].weight;
  }
  return out;
}

std::string format_coverage_table(const CoverageReport &report,
                                  const std::vector<IntrinsicDef> &defs) {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %10s %10s %9s\n", "family", "covered", "weight",
                "coverage");
  s += buf;
  const auto fams = category_breakdown(report, defs);
  for (int f = 0; f < kFamilyCount; ++f) {
    std::snprintf(buf, sizeof buf, "%-20s %10llu %10llu %8.2f%%\n",
                  to_string(static_cast<Family>(f)),
                  static_cast<unsigned long long>(fams[f].covered),
                  static_cast<unsigned long long>(fams[f].weight), 100.0 * fams[f].ratio());
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "%-20s %10llu %10llu %8.2f%%\n", "total",
                static_cast<unsigned long long>(report.covered),
                static_cast<unsigned long long>(report.total_weight),
                100.0 * report.coverage());
  s += buf;
  std::snprintf(buf, sizeof buf, "programs: %llu\n",
                static_cast<unsigned long long>(report.corpus_size));
  s += buf;
  return s;
}

std::string format_coverage_records(const CoverageReport &report,
                                    const std::vector<IntrinsicDef> &defs) {
  std::string s;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto &e = report.entries[i];
    nlohmann::json j = {{"name", e.name},
                        {"count", e.count},
                        {"weight", e.weight},
                        {"covered", e.contribution()},
                        {"family", to_string(family_of(defs[i]))}};
    s += j.dump() + "\n";
  }
  nlohmann::json t = {{"summary", true},
                      {"programs", report.corpus_size},
                      {"covered", report.covered},
                      {"weight", report.total_weight},
                      {"coverage", report.coverage()}};
  s += t.dump() + "\n";
  return s;
}

}  // namespace rvfuzz
