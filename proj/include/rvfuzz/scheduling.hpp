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

#include <optional>
#include <string>
#include <vector>

#include "rvfuzz/dataflow.hpp"
#include "rvfuzz/rng.hpp"

namespace rvfuzz {

enum class ScheduleMode { AllIn, Unit, Random };
const char *to_string(ScheduleMode m);
std::optional<ScheduleMode> parse_mode(const std::string &token);
inline constexpr ScheduleMode kAllModes[] = {ScheduleMode::AllIn, ScheduleMode::Unit,
                                             ScheduleMode::Random};

struct ScheduleItem {
  enum class Kind { Prefix, Op, Suffix };
  Kind kind = Kind::Op;
  int owner_op_index = 0;
  int intra_index = 0;
  friend bool operator==(const ScheduleItem &, const ScheduleItem &) = default;
  friend auto operator<=>(const ScheduleItem &, const ScheduleItem &) = default;
  std::string label() const;  // "P1.0", "I1", "S1.0"
};

struct Schedule {
  std::vector<ScheduleItem> items;
  ScheduleMode mode = ScheduleMode::AllIn;
};

// P[i]: registers loaded before op i; S[i]: registers stored after op i.
struct PrefixSuffix {
  std::vector<std::vector<int>> P;
  std::vector<std::vector<int>> S;
  std::size_t size() const { return P.size(); }
};

PrefixSuffix derive_prefix_suffix(const std::vector<OpInstance> &ops,
                                  const std::vector<VReg> &regs);

Schedule schedule_allin(const PrefixSuffix &ps);
Schedule schedule_unit(const PrefixSuffix &ps);
Schedule schedule_random(const PrefixSuffix &ps, Rng &rng);
Schedule schedule(ScheduleMode mode, const PrefixSuffix &ps, Rng &rng);

// nullopt when all ordering constraints hold, otherwise the first violation.
std::optional<std::string> check_constraints(const Schedule &s, const PrefixSuffix &ps);

}  // namespace rvfuzz
