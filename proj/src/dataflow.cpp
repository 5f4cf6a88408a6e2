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

#include "rvfuzz/dataflow.hpp"

#include <algorithm>

#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

std::string VReg::name() const {
  return "vreg_" + std::to_string(id) + (from_memory ? "_mem" : "");
}

void VRegTable::remove(int id) {
  for (auto &[tok, ids] : by_type_)
    ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
}

const std::vector<int> &VRegTable::active(const VectorType &t) const {
  static const std::vector<int> kEmpty;
  auto it = by_type_.find(t.token());
  return it == by_type_.end() ? kEmpty : it->second;
}

bool coin_flip(Rng &rng, double bias) { return rng.chance(bias); }

bool is_synthesized_param(const IntrinsicDef &def, std::size_t index) {
  const Param &p = def.params[index];
  if (!p.type.is_vector()) return false;
  UbRule rule = traits_of(def).rule;
  if (rule == UbRule::GatherIndex || rule == UbRule::CompressMask)
    return p.name == "vs1";
  return false;
}

std::vector<OpInstance> make_instances(const std::vector<const IntrinsicDef *> &defs) {
  std::vector<OpInstance> out;
  out.reserve(defs.size());
  for (const auto *d : defs) {
    OpInstance op;
    op.def = d;
    op.bound_params.assign(d->params.size(), -1);
    out.push_back(std::move(op));
  }
  return out;
}

Allocation allocate(std::vector<OpInstance> &ops, Rng &rng,
                    const AllocConfig &cfg, const std::vector<VReg> &seed_regs) {
  Allocation a;
  for (const auto &r : seed_regs) {
    a.regs.push_back(r);
    a.regs.back().id = static_cast<int>(a.regs.size()) - 1;
    if (!r.quarantined) a.table.add(a.regs.back());
  }
  auto flip = [&] { return cfg.coin ? cfg.coin() : coin_flip(rng, cfg.coin_bias); };
  auto fresh = [&](const VectorType &t, bool mem, bool quarantined) {
    VReg r;
    r.id = static_cast<int>(a.regs.size());
    r.vtype = t;
    r.from_memory = mem;
    r.quarantined = quarantined;
    a.regs.push_back(r);
    if (!quarantined) a.table.add(r);
    return r.id;
  };

  for (auto &op : ops) {
    const IntrinsicDef &d = *op.def;
    op.bound_params.assign(d.params.size(), -1);
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      const Param &p = d.params[i];
      if (!p.type.is_vector() || is_synthesized_param(d, i)) continue;
      const auto &pool = a.table.active(p.type.vtype);
      if (flip() || pool.empty()) {
        op.bound_params[i] = fresh(p.type.vtype, true, false);
      } else {
        op.bound_params[i] = pool[rng.below(pool.size())];
      }
    }
    if (d.return_type.is_vector()) {
      const VectorType &t = d.return_type.vtype;
      if (traits_of(d).always_undefined()) {
        op.bound_return = fresh(t, false, true);
        continue;
      }
      const auto &pool = a.table.active(t);
      if (flip() || pool.empty()) {
        op.bound_return = fresh(t, false, false);
      } else {
        op.bound_return = pool[rng.below(pool.size())];
      }
    }
  }
  return a;
}

std::vector<int> reads_of(const OpInstance &op) {
  std::vector<int> out;
  for (int r : op.bound_params)
    if (r >= 0) out.push_back(r);
  return out;
}

std::optional<int> write_of(const OpInstance &op) { return op.bound_return; }

}  // namespace rvfuzz
