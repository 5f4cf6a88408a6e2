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

#include <algorithm>

#include "rvfuzz/codegen.hpp"
#include "rvfuzz/selection.hpp"
#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

namespace {

bool mask_undisturbed(const IntrinsicDef &d) {
  const std::string p = d.policy();
  return p == "tumu" || p == "mu";
}

RegState uniform(const VectorType &t, std::size_t len, bool defined) {
  RegState s;
  s.def.assign(len * t.nfields(), defined ? 1 : 0);
  s.known.assign(len * t.nfields(), -1);
  return s;
}

// Known bit of a mask-logic result, or -1.
int mask_logic(const std::string &head, int a, int b) {
  if (head == "vmset") return 1;
  if (head == "vmclr") return 0;
  if (a < 0) return -1;
  if (head == "vmmv") return a;
  if (head == "vmnot") return !a;
  if (b < 0) return -1;
  if (head == "vmand") return a & b;
  if (head == "vmnand") return !(a & b);
  if (head == "vmandn") return a & !b;
  if (head == "vmor") return a | b;
  if (head == "vmnor") return !(a | b);
  if (head == "vmorn") return a | !b;
  if (head == "vmxor") return a ^ b;
  if (head == "vmxnor") return !(a ^ b);
  return -1;
}

}  // namespace

ElementState analyze_agnostic(const CaseSkeleton &sk) {
  const std::size_t L = sk.data_len;
  const std::uint32_t R = sk.ratio;
  const auto &regs = sk.alloc.regs;
  ElementState es;
  for (const auto &a : sk.arrays) {
    es.arrays.emplace_back(a.length, 1);
    es.touched.emplace_back(a.length, 0);
  }
  for (const auto &op : sk.ops)
    if (!participates_at_ratio(*op.def, R))
      throw ModelError(op.def->full_name + " breaks ratio alignment at ratio " +
                       std::to_string(R));

  auto state = [&](int reg, int version) -> const RegState & {
    auto it = es.regs.find({reg, version});
    if (it == es.regs.end())
      throw ModelError("use of undefined register " + regs[reg].name());
    return it->second;
  };
  auto mask_bit = [&](int array, std::size_t p) { return sk.arrays[array].init.at(p) != 0; };

  for (std::size_t i = 0; i < sk.ops.size(); ++i) {
    for (const MemAccess &acc : sk.loads[i]) {
      const VectorType &t = regs[acc.reg].vtype;
      RegState s = uniform(t, L, !acc.off_ratio);
      if (!acc.off_ratio && t.is_bool()) {
        for (std::size_t p = 0; p < L; ++p) s.known[p] = mask_bit(acc.array, p);
      } else if (!acc.off_ratio && acc.mask_array >= 0 && !mask_undisturbed(*acc.def)) {
        for (std::size_t p = 0; p < L; ++p)
          if (!mask_bit(acc.mask_array, p))
            for (int f = 0; f < t.nfields(); ++f) s.def[f * L + p] = 0;
      }
      es.regs[{acc.reg, 0}] = std::move(s);
    }

    const OpInstance &op = sk.ops[i];
    const IntrinsicDef &d = *op.def;
    if (op.bound_return) {
      const int reg = *op.bound_return;
      const VectorType &t = d.return_type.vtype;
      const OpTraits tr = traits_of(d);
      auto param_state = [&](const char *name) -> const RegState * {
        int k = d.param_index(name);
        if (k < 0 || op.bound_params[k] < 0) return nullptr;
        return &state(op.bound_params[k], sk.param_version[i][k]);
      };
      RegState out = uniform(t, L, false);
      const bool on_ratio = t.ratio() == R && !regs[reg].quarantined;
      if (on_ratio && tr.lane == LaneClass::TupleExtract) {
        const RegState *src = param_state("src");
        int idx = sk.synth[i].tuple_index;
        if (src && idx >= 0) {
          std::copy_n(src->def.begin() + idx * L, L, out.def.begin());
        }
      } else if (on_ratio && tr.lane == LaneClass::TupleInsert) {
        const RegState *dest = param_state("dest");
        const RegState *val = param_state("value");
        int idx = sk.synth[i].tuple_index;
        if (dest && val && idx >= 0) {
          out.def = dest->def;
          std::copy_n(val->def.begin(), L, out.def.begin() + idx * L);
        }
      } else if (on_ratio && tr.lane == LaneClass::TupleCreate) {
        for (int f = 0; f < t.nfields(); ++f) {
          const RegState *v = param_state(("v" + std::to_string(f)).c_str());
          if (v) std::copy_n(v->def.begin(), L, out.def.begin() + f * L);
        }
      } else if (on_ratio && (tr.lane == LaneClass::Elementwise ||
                              tr.lane == LaneClass::CrossLane)) {
        const int vd_k = d.param_index("vd");
        const bool policy_vd = !tr.vd_is_operand;
        std::vector<const RegState *> sources;
        for (std::size_t k = 0; k < d.params.size(); ++k) {
          if (op.bound_params[k] < 0 || d.params[k].name == "vm") continue;
          if (static_cast<int>(k) == vd_k && policy_vd) continue;
          sources.push_back(&state(op.bound_params[k], sk.param_version[i][k]));
        }
        const RegState *mask = d.is_masked() ? param_state("vm") : nullptr;
        const RegState *vd = mask_undisturbed(d) ? param_state("vd") : nullptr;
        bool whole = true;
        if (tr.lane == LaneClass::CrossLane) {
          for (const auto *s : sources) whole = whole && s->all_defined();
          whole = whole && !sk.synth[i].slidedown_clamped;
        }
        const std::string head = mnemonic_head(d.name_parts.mnemonic);
        const RegState *a = param_state(d.param_index("vs2") >= 0 ? "vs2" : "vs");
        const RegState *b = param_state("vs1");
        for (std::size_t p = 0; p < L; ++p) {
          bool compute = whole;
          if (tr.lane == LaneClass::Elementwise)
            for (const auto *s : sources) compute = compute && s->def[p];
          bool def;
          if (!mask) {
            def = compute;
          } else if (!mask->def[p]) {
            def = false;
          } else if (mask->known[p] == 1) {
            def = compute;
          } else if (mask->known[p] == 0) {
            def = vd && vd->def[p];
          } else {
            def = vd && compute && vd->def[p];
          }
          out.def[p] = def;
          if (def && t.is_bool() && !mask) {
            int ka = a && a->def[p] ? a->known[p] : -1;
            int kb = b && b->def[p] ? b->known[p] : -1;
            out.known[p] = static_cast<std::int8_t>(mask_logic(head, ka, kb));
          }
        }
      }
      es.regs[{reg, sk.return_version[i]}] = std::move(out);
    }

    for (const MemAccess &acc : sk.stores[i]) {
      const VectorType &t = regs[acc.reg].vtype;
      auto &arr = es.arrays[acc.array];
      if (acc.off_ratio) {
        std::fill(arr.begin(), arr.end(), 0);
        continue;
      }
      const RegState &s = state(acc.reg, acc.version);
      const int nf = t.nfields();
      for (std::size_t p = 0; p < L; ++p) {
        for (int f = 0; f < nf; ++f) {
          std::size_t e = (p * acc.stride_mult) * nf + f;
          es.touched[acc.array][e] = 1;
          if (acc.mask_array >= 0 && !mask_bit(acc.mask_array, p)) continue;
          arr[e] = s.def[f * L + p];
        }
      }
    }
  }
  return es;
}

}  // namespace rvfuzz
