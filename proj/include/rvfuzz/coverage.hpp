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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rvfuzz/intrinsic.hpp"
#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

struct CoverageEntry {
  std::string name;
  std::uint64_t count = 0;
  std::uint32_t weight = 1;
  std::uint64_t contribution() const { return count < weight ? count : weight; }
};

struct FamilyCoverage {
  std::uint64_t covered = 0;
  std::uint64_t weight = 0;
  double ratio() const { return weight ? double(covered) / double(weight) : 0.0; }
};

struct CoverageReport {
  std::vector<CoverageEntry> entries;  // parallels the defs
  std::uint64_t covered = 0;           // sum of min(count, weight)
  std::uint64_t total_weight = 0;
  std::uint64_t corpus_size = 0;
  double coverage() const {
    return total_weight ? double(covered) / double(total_weight) : 0.0;
  }
};

// Counts whole-identifier occurrences of intrinsic names. Feeding programs
// one at a time gives the same result as one pass over the whole corpus.
class CoverageCounter {
 public:
  // Throws std::invalid_argument on an empty definition list.
  explicit CoverageCounter(const std::vector<IntrinsicDef> &defs);

  void add(std::string_view program);
  void merge(const CoverageCounter &other);
  CoverageReport report() const;

 private:
  const std::vector<IntrinsicDef> *defs_;
  std::unordered_map<std::string_view, std::size_t> index_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t corpus_size_ = 0;
};

CoverageReport compute_coverage(const std::vector<std::string> &corpus,
                                const std::vector<IntrinsicDef> &defs);

// Per functional family; the families partition the report's numerator.
std::array<FamilyCoverage, kFamilyCount> category_breakdown(
    const CoverageReport &report, const std::vector<IntrinsicDef> &defs);

// Plain-text table and line-delimited JSON records.
std::string format_coverage_table(const CoverageReport &report,
                                  const std::vector<IntrinsicDef> &defs);
std::string format_coverage_records(const CoverageReport &report,
                                    const std::vector<IntrinsicDef> &defs);

}  // namespace rvfuzz
