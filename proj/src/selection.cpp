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

#include "rvfuzz/selection.hpp"

#include <string>

#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

bool participates_at_ratio(const IntrinsicDef &def, std::uint32_t ratio) {
  auto types = def.vector_types();
  if (types.empty()) return false;
  if (traits_of(def).lane == LaneClass::Reduction) {
    int vs2 = def.param_index("vs2");
    return vs2 >= 0 && def.params[vs2].type.is_vector() &&
           def.params[vs2].type.vtype.ratio() == ratio;
  }
  auto al = is_ratio_aligned(def);
  if (al.aligned) return *al.common_ratio == ratio;
  for (const auto &t : types)
    if (t.ratio() == ratio) return true;
  return false;
}

std::vector<const IntrinsicDef *> filter_candidates(
    const std::vector<IntrinsicDef> &defs, std::uint32_t ratio,
    const std::function<bool(const IntrinsicDef &)> &accept) {
  std::vector<const IntrinsicDef *> out;
  for (const auto &d : defs) {
    if (d.category != Category::Operation) continue;
    if (!participates_at_ratio(d, ratio)) continue;
    if (accept && !accept(d)) continue;
    out.push_back(&d);
  }
  if (out.empty())
    throw SelectionError("ratio " + std::to_string(ratio) +
                         " admits no operation intrinsics in this listing");
  return out;
}

std::vector<const IntrinsicDef *> select_sequence(
    const std::vector<const IntrinsicDef *> &candidates, std::size_t n,
    Rng &rng) {
  if (candidates.empty()) throw SelectionError("empty candidate pool");
  std::vector<const IntrinsicDef *> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(candidates[rng.below(candidates.size())]);
  return out;
}

std::vector<const IntrinsicDef *> select_sequence(
    const std::vector<const IntrinsicDef *> &candidates,
    const SelectionConfig &cfg) {
  if (cfg.sequence_length < 1) throw SelectionError("sequence length must be >= 1");
  Rng rng(cfg.rng_seed);
  return select_sequence(candidates, cfg.sequence_length, rng);
}

}  // namespace rvfuzz
