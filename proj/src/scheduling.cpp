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

#include "rvfuzz/scheduling.hpp"

#include <algorithm>
#include <set>

namespace rvfuzz {

using Kind = ScheduleItem::Kind;

const char *to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::AllIn: return "allin";
    case ScheduleMode::Unit: return "unit";
    case ScheduleMode::Random: return "random";
  }
  return "?";
}

std::optional<ScheduleMode> parse_mode(const std::string &token) {
  for (auto m : kAllModes)
    if (token == to_string(m)) return m;
  return std::nullopt;
}

std::string ScheduleItem::label() const {
  switch (kind) {
    case Kind::Prefix:
      return "P" + std::to_string(owner_op_index) + "." + std::to_string(intra_index);
    case Kind::Op: return "I" + std::to_string(owner_op_index);
    case Kind::Suffix:
      return "S" + std::to_string(owner_op_index) + "." + std::to_string(intra_index);
  }
  return "?";
}

PrefixSuffix derive_prefix_suffix(const std::vector<OpInstance> &ops,
                                  const std::vector<VReg> &regs) {
  PrefixSuffix ps;
  ps.P.resize(ops.size());
  ps.S.resize(ops.size());
  std::set<int> seen;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (int r : ops[i].bound_params) {
      if (r < 0 || !seen.insert(r).second) continue;
      if (regs[r].from_memory) ps.P[i].push_back(r);
    }
    if (ops[i].bound_return) {
      int r = *ops[i].bound_return;
      seen.insert(r);
      if (!regs[r].quarantined) ps.S[i].push_back(r);
    }
  }
  return ps;
}

Schedule schedule_allin(const PrefixSuffix &ps) {
  Schedule s;
  s.mode = ScheduleMode::AllIn;
  const int n = static_cast<int>(ps.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < static_cast<int>(ps.P[i].size()); ++j)
      s.items.push_back({Kind::Prefix, i, j});
  for (int i = 0; i < n; ++i) s.items.push_back({Kind::Op, i, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < static_cast<int>(ps.S[i].size()); ++j)
      s.items.push_back({Kind::Suffix, i, j});
  return s;
}

Schedule schedule_unit(const PrefixSuffix &ps) {
  Schedule s;
  s.mode = ScheduleMode::Unit;
  const int n = static_cast<int>(ps.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < static_cast<int>(ps.P[i].size()); ++j)
      s.items.push_back({Kind::Prefix, i, j});
    s.items.push_back({Kind::Op, i, 0});
    for (int j = 0; j < static_cast<int>(ps.S[i].size()); ++j)
      s.items.push_back({Kind::Suffix, i, j});
  }
  return s;
}

Schedule schedule_random(const PrefixSuffix &ps, Rng &rng) {
  Schedule s;
  s.mode = ScheduleMode::Random;
  auto &seq = s.items;
  // Insert at a uniformly chosen gap in [lo, hi] (gap k = before seq[k]).
  auto insert_between = [&](std::size_t lo, std::size_t hi, ScheduleItem item) {
    std::size_t at = lo + rng.below(hi - lo + 1);
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(at), item);
    return at;
  };
  std::size_t ptr_op = 0;  // gap just after the last inserted op
  const int n = static_cast<int>(ps.size());
  for (int i = 0; i < n; ++i) {
    std::size_t op_at = insert_between(ptr_op, seq.size(), {Kind::Op, i, 0});
    std::size_t lo = 0;
    for (int j = 0; j < static_cast<int>(ps.P[i].size()); ++j) {
      std::size_t at = insert_between(lo, op_at, {Kind::Prefix, i, j});
      lo = at + 1;
      ++op_at;
    }
    lo = op_at + 1;
    for (int j = 0; j < static_cast<int>(ps.S[i].size()); ++j) {
      std::size_t at = insert_between(lo, seq.size(), {Kind::Suffix, i, j});
      lo = at + 1;
    }
    ptr_op = op_at + 1;
  }
  return s;
}

Schedule schedule(ScheduleMode mode, const PrefixSuffix &ps, Rng &rng) {
  switch (mode) {
    case ScheduleMode::AllIn: return schedule_allin(ps);
    case ScheduleMode::Unit: return schedule_unit(ps);
    case ScheduleMode::Random: return schedule_random(ps, rng);
  }
  return schedule_allin(ps);
}

std::optional<std::string> check_constraints(const Schedule &s, const PrefixSuffix &ps) {
  const int n = static_cast<int>(ps.size());
  std::vector<int> op_pos(n, -1);
  std::vector<std::vector<int>> p_pos(n), s_pos(n);
  for (int i = 0; i < n; ++i) {
    p_pos[i].assign(ps.P[i].size(), -1);
    s_pos[i].assign(ps.S[i].size(), -1);
  }
  for (int k = 0; k < static_cast<int>(s.items.size()); ++k) {
    const auto &it = s.items[k];
    if (it.owner_op_index < 0 || it.owner_op_index >= n)
      return "unknown item " + it.label();
    int *slot = nullptr;
    if (it.kind == Kind::Op) {
      slot = &op_pos[it.owner_op_index];
    } else {
      auto &v = it.kind == Kind::Prefix ? p_pos[it.owner_op_index]
                                        : s_pos[it.owner_op_index];
      if (it.intra_index < 0 || it.intra_index >= static_cast<int>(v.size()))
        return "unknown item " + it.label();
      slot = &v[it.intra_index];
    }
    if (*slot != -1) return "duplicate item " + it.label();
    *slot = k;
  }
  for (int i = 0; i < n; ++i) {
    std::string op = "I" + std::to_string(i);
    if (op_pos[i] < 0) return "missing item " + op;
    for (std::size_t j = 0; j < p_pos[i].size(); ++j)
      if (p_pos[i][j] < 0)
        return "missing item " + ScheduleItem{Kind::Prefix, i, int(j)}.label();
    for (std::size_t j = 0; j < s_pos[i].size(); ++j)
      if (s_pos[i][j] < 0)
        return "missing item " + ScheduleItem{Kind::Suffix, i, int(j)}.label();
  }
  for (int i = 0; i < n; ++i) {
    std::string op = "I" + std::to_string(i);
    for (std::size_t j = 0; j < p_pos[i].size(); ++j) {
      std::string p = ScheduleItem{Kind::Prefix, i, int(j)}.label();
      if (p_pos[i][j] > op_pos[i]) return "prefix after op: " + p + " after " + op;
      if (j > 0 && p_pos[i][j - 1] > p_pos[i][j])
        return "prefix order: " + p + " before " +
               ScheduleItem{Kind::Prefix, i, int(j - 1)}.label();
    }
    for (std::size_t j = 0; j < s_pos[i].size(); ++j) {
      std::string sl = ScheduleItem{Kind::Suffix, i, int(j)}.label();
      if (s_pos[i][j] < op_pos[i]) return "suffix before op: " + sl + " before " + op;
      if (j > 0 && s_pos[i][j - 1] > s_pos[i][j])
        return "suffix order: " + sl + " before " +
               ScheduleItem{Kind::Suffix, i, int(j - 1)}.label();
    }
    if (i > 0 && op_pos[i - 1] > op_pos[i])
      return "op order: " + op + " before I" + std::to_string(i - 1);
  }
  return std::nullopt;
}

}  // namespace rvfuzz
