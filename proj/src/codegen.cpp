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

#include "rvfuzz/codegen.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rvfuzz/selection.hpp"
#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

namespace {

using EK = Expr::Kind;

bool starts(const std::string &s, const char *p) { return s.rfind(p, 0) == 0; }

int log2_exact(std::uint64_t v) {
  int l = 0;
  while ((std::uint64_t{1} << l) < v) ++l;
  return (std::uint64_t{1} << l) == v ? l : -1;
}

Expr call(const IntrinsicDef *d, std::vector<Expr> args) {
  Expr e;
  e.kind = EK::Call;
  e.def = d;
  e.args = std::move(args);
  return e;
}

Expr var(const std::string &name) {
  Expr e;
  e.kind = EK::Var;
  e.name = name;
  return e;
}

Expr ptr(int array) {
  Expr e;
  e.kind = EK::Ptr;
  e.array = array;
  return e;
}

Expr vl_expr(const VectorType &t, bool off_ratio) {
  Expr e;
  e.kind = off_ratio ? EK::VlFor : EK::Vl;
  e.vtype = t;
  return e;
}

Expr int_expr(std::uint64_t v, const std::string &c_type) {
  Expr e;
  e.kind = EK::Int;
  e.value = v;
  e.c_type = c_type;
  return e;
}

Expr scalar_expr(const ScalarValue &v) {
  Expr e;
  e.kind = EK::Scalar;
  e.scalar = v;
  return e;
}

Expr special(EK kind, std::uint64_t v, const std::string &c_type = "") {
  Expr e;
  e.kind = kind;
  e.value = v;
  e.c_type = c_type;
  return e;
}

VectorType u8_for_ratio(std::uint32_t r) {
  return VectorType::data(ElemKind::Uint, 8, 3 - log2_exact(r));
}

std::string tok(const VectorType &t) { return t.token(); }

// Helper intrinsics, spelled with explicit names.
const IntrinsicDef *h_vid(const VectorType &u) {
  return helper_def(u.c_name() + " __riscv_vid_v_" + tok(u) + "(size_t vl);");
}
const IntrinsicDef *h_vx(const char *op, const VectorType &u, const std::string &scalar) {
  return helper_def(u.c_name() + " __riscv_" + op + "_vx_" + tok(u) + "(" + u.c_name() +
                    " vs2, " + scalar + " rs1, size_t vl);");
}
const IntrinsicDef *h_vmset(std::uint32_t r) {
  return helper_def("vbool" + std::to_string(r) + "_t __riscv_vmset_m_b" +
                    std::to_string(r) + "(size_t vl);");
}
const IntrinsicDef *h_vle8(const VectorType &u8) {
  return helper_def(u8.c_name() + " __riscv_vle8_v_" + tok(u8) +
                    "(const uint8_t *rs1, size_t vl);");
}
const IntrinsicDef *h_vse8(const VectorType &u8) {
  return helper_def("void __riscv_vse8_v_" + tok(u8) + "(uint8_t *rs1, " + u8.c_name() +
                    " vs3, size_t vl);");
}
const IntrinsicDef *h_vmseq(const VectorType &u8, std::uint32_t r) {
  std::string b = std::to_string(r);
  return helper_def("vbool" + b + "_t __riscv_vmseq_vx_" + tok(u8) + "_b" + b + "(" +
                    u8.c_name() + " vs2, uint8_t rs1, size_t vl);");
}
const IntrinsicDef *h_vmerge(const VectorType &u8, std::uint32_t r) {
  return helper_def(u8.c_name() + " __riscv_vmerge_vxm_" + tok(u8) + "(" + u8.c_name() +
                    " vs2, uint8_t rs1, vbool" + std::to_string(r) +
                    "_t v0, size_t vl);");
}
const IntrinsicDef *h_splat(const VectorType &t) {
  if (t.kind() == ElemKind::Float)
    return helper_def(t.c_name() + " __riscv_vfmv_v_f_" + tok(t) + "(" + t.elem_c_type() +
                      " rs1, size_t vl);");
  return helper_def(t.c_name() + " __riscv_vmv_v_x_" + tok(t) + "(" + t.elem_c_type() +
                    " rs1, size_t vl);");
}
const IntrinsicDef *h_vcreate(const VectorType &tt) {
  std::string s = tt.c_name() + " __riscv_vcreate_v_" + tok(tt) + "(";
  for (int i = 0; i < tt.nfields(); ++i)
    s += (i ? ", " : "") + tt.field_type().c_name() + " v" + std::to_string(i);
  return helper_def(s + ");");
}
// Unit-stride load/store used when the listing offers none for a type.
const IntrinsicDef *h_unit_load(const VectorType &t) {
  std::string w = std::to_string(t.sew());
  std::string mn = t.is_tuple() ? "vlseg" + std::to_string(t.nfields()) + "e" + w : "vle" + w;
  return helper_def(t.c_name() + " __riscv_" + mn + "_v_" + tok(t) + "(const " +
                    t.elem_c_type() + " *rs1, size_t vl);");
}
const IntrinsicDef *h_unit_store(const VectorType &t) {
  std::string w = std::to_string(t.sew());
  std::string mn = t.is_tuple() ? "vsseg" + std::to_string(t.nfields()) + "e" + w : "vse" + w;
  return helper_def("void __riscv_" + mn + "_v_" + tok(t) + "(" + t.elem_c_type() +
                    " *rs1, " + t.c_name() + " vs3, size_t vl);");
}

bool is_memory_access(const IntrinsicDef &d) {
  const std::string h = mnemonic_head(d.name_parts.mnemonic);
  return traits_of(d).lane == LaneClass::Memory && !starts(h, "vlm") && !starts(h, "vsm");
}

const VectorType *index_param_type(const IntrinsicDef &d) {
  int i = d.param_index("rs2");
  if (i >= 0 && d.params[i].type.is_vector()) return &d.params[i].type.vtype;
  return nullptr;
}

// Offsets (vl_max - 1) * segment bytes must fit the index EEW.
bool index_fits(const VectorType &data, const VectorType &idx, std::uint32_t vlen_max) {
  std::uint64_t vmax = vlen_max / data.ratio();
  std::uint64_t seg = static_cast<std::uint64_t>(data.nfields()) * data.sew() / 8;
  std::uint64_t top = vmax == 0 ? 0 : (vmax - 1) * seg;
  return idx.sew() >= 64 || top < (std::uint64_t{1} << idx.sew());
}

bool can_synthesize(const IntrinsicDef &d) {
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    const auto &p = d.params[i];
    switch (p.type.kind) {
      case SemType::Kind::Vector:
      case SemType::Kind::Scalar:
      case SemType::Kind::SizeT:
      case SemType::Kind::UnsignedInt: break;
      default: return false;
    }
    if (p.type.kind == SemType::Kind::Scalar && p.type.elem_kind == ElemKind::Float &&
        p.type.width != 16 && p.type.width != 32 && p.type.width != 64)
      return false;
  }
  return true;
}

const char *kFrm[] = {"__RISCV_FRM_RNE", "__RISCV_FRM_RTZ", "__RISCV_FRM_RDN",
                      "__RISCV_FRM_RUP", "__RISCV_FRM_RMM"};
const char *kVxrm[] = {"__RISCV_VXRM_RNU", "__RISCV_VXRM_RNE", "__RISCV_VXRM_RDN",
                       "__RISCV_VXRM_ROD"};

std::uint64_t fnv1a(const std::string &s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

bool RegState::all_defined() const {
  return std::all_of(def.begin(), def.end(), [](std::uint8_t d) { return d != 0; });
}

std::string ProgramCase::file_name() const {
  return "case_" + std::to_string(seed) + "_" + to_string(mode) + ".c";
}

const IntrinsicDef *helper_def(const std::string &prototype) {
  static std::mutex mu;
  static std::unordered_map<std::string, const IntrinsicDef *> cache;
  static std::deque<IntrinsicDef> store;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(prototype);
  if (it != cache.end()) return it->second;
  store.push_back(parse_prototype_line(prototype));
  cache.emplace(prototype, &store.back());
  return &store.back();
}

bool in_oracle_subset(const IntrinsicDef &d) {
  const NameParts &np = d.name_parts;
  if (np.type_tokens.empty() || np.rounding_mode) return false;
  for (const auto &t : d.vector_types())
    if (t.kind() == ElemKind::Float || t.is_tuple()) return false;
  const std::string &mn = np.mnemonic;
  const std::string h = mnemonic_head(mn);
  auto numbered = [&](const char *stem) {
    if (!starts(h, stem)) return false;
    std::string rest = h.substr(std::string(stem).size());
    return rest == "8" || rest == "16" || rest == "32" || rest == "64";
  };
  if (d.category == Category::Load)
    return mn.ends_with("_v") && (numbered("vle") || numbered("vlse") ||
                                  numbered("vloxei") || numbered("vluxei"));
  if (d.category == Category::Store)
    return mn.ends_with("_v") && (numbered("vse") || numbered("vsse") ||
                                  numbered("vsoxei") || numbered("vsuxei"));
  if (d.category != Category::Operation) return false;
  static const std::unordered_set<std::string> kOps = {
      "vadd_vv",  "vadd_vx",  "vsub_vv",  "vsub_vx",  "vrsub_vx", "vsll_vv",
      "vsll_vx",  "vsrl_vv",  "vsrl_vx",  "vsra_vv",  "vsra_vx",  "vand_vv",
      "vand_vx",  "vor_vv",   "vor_vx",   "vxor_vv",  "vxor_vx",  "vmseq_vv",
      "vmseq_vx", "vmsne_vv", "vmsne_vx", "vmslt_vv", "vmslt_vx", "vmsltu_vv",
      "vmsltu_vx", "vmsle_vv", "vmsle_vx", "vmsleu_vv", "vmsleu_vx", "vmsgt_vv",
      "vmsgt_vx", "vmsgtu_vv", "vmsgtu_vx", "vmsge_vv", "vmsge_vx", "vmsgeu_vv",
      "vmsgeu_vx", "vmand_mm", "vmnand_mm", "vmandn_mm", "vmor_mm", "vmnor_mm",
      "vmorn_mm", "vmxor_mm", "vmxnor_mm", "vmmv_m",   "vmnot_m",  "vmset_m",
      "vmclr_m"};
  return kOps.count(mn) != 0;
}

struct Generator::Pools {
  std::map<std::uint32_t, std::vector<const IntrinsicDef *>> candidates;
  std::map<std::string, std::vector<const IntrinsicDef *>> loads, stores;
  std::vector<VectorType> ratio_types;
};

Generator::Generator(std::shared_ptr<const std::vector<IntrinsicDef>> defs, GenConfig cfg)
    : defs_(std::move(defs)), cfg_(std::move(cfg)), pools_(std::make_shared<Pools>()) {
  if (!defs_ || defs_->empty()) throw ModelError("empty intrinsic listing");
  if (cfg_.seq_len_min < 1 || cfg_.seq_len_min > cfg_.seq_len_max)
    throw ModelError("invalid sequence length range");
  if (cfg_.data_len_min < 1 || cfg_.data_len_min > cfg_.data_len_max)
    throw ModelError("invalid data length range");
  if (cfg_.vlen_max < 64 || (cfg_.vlen_max & (cfg_.vlen_max - 1)))
    throw ModelError("vlen_max must be a power of two >= 64");
  const bool oracle = cfg_.oracle_profile;
  auto accept = [oracle](const IntrinsicDef &d) {
    return can_synthesize(d) && (!oracle || in_oracle_subset(d));
  };
  if (cfg_.ratio_type) {
    auto t = VectorType::parse_token(*cfg_.ratio_type);
    if (!t || t->is_tuple()) throw ModelError("invalid ratio type '" + *cfg_.ratio_type + "'");
    pools_->ratio_types.push_back(*t);
  } else {
    for (ElemKind k : {ElemKind::Int, ElemKind::Uint, ElemKind::Float}) {
      if (oracle && k == ElemKind::Float) continue;
      for (int sew : {8, 16, 32, 64})
        for (int l = -3; l <= 3; ++l)
          if (is_legal_data_type(k, sew, l))
            pools_->ratio_types.push_back(VectorType::data(k, sew, l));
    }
  }
  for (const auto &t : pools_->ratio_types) {
    std::uint32_t r = t.ratio();
    if (pools_->candidates.count(r)) continue;
    try {
      pools_->candidates[r] = filter_candidates(*defs_, r, accept);
    } catch (const SelectionError &) {
      pools_->candidates[r] = {};
    }
  }
  if (cfg_.ratio_type && pools_->candidates.begin()->second.empty())
    throw SelectionError("ratio type " + *cfg_.ratio_type +
                         " admits no operation intrinsics in this listing");
  if (!cfg_.ratio_type) {
    // Keep only types whose ratio has candidates.
    auto &rt = pools_->ratio_types;
    rt.erase(std::remove_if(rt.begin(), rt.end(),
                            [&](const VectorType &t) {
                              return pools_->candidates[t.ratio()].empty();
                            }),
             rt.end());
    if (rt.empty()) throw SelectionError("no ratio admits operation intrinsics");
  }
  for (const auto &d : *defs_) {
    if (!is_memory_access(d) || d.name_parts.rounding_mode) continue;
    if (oracle && !in_oracle_subset(d)) continue;
    if (d.category == Category::Load && d.return_type.is_vector()) {
      pools_->loads[d.return_type.vtype.token()].push_back(&d);
    } else if (d.category == Category::Store) {
      int i = d.param_index("vs3");
      if (i >= 0 && d.params[i].type.is_vector())
        pools_->stores[d.params[i].type.vtype.token()].push_back(&d);
    }
  }
  nlohmann::json snap;
  snap["listing_digest"] = listing_digest();
  snap["ratio_type"] = cfg_.ratio_type ? nlohmann::json(*cfg_.ratio_type) : nlohmann::json();
  snap["seq_len"] = {cfg_.seq_len_min, cfg_.seq_len_max};
  snap["data_len"] = {cfg_.data_len_min, cfg_.data_len_max};
  snap["coin_bias"] = cfg_.coin_bias;
  snap["vlen_max"] = cfg_.vlen_max;
  snap["oracle_profile"] = cfg_.oracle_profile;
  snapshot_ = snap.dump();
}

GenConfig gen_config_from_snapshot(const std::string &snapshot) {
  GenConfig c;
  try {
    auto j = nlohmann::json::parse(snapshot);
    if (!j.at("ratio_type").is_null()) c.ratio_type = j["ratio_type"].get<std::string>();
    c.seq_len_min = j.at("seq_len").at(0).get<std::size_t>();
    c.seq_len_max = j.at("seq_len").at(1).get<std::size_t>();
    c.data_len_min = j.at("data_len").at(0).get<std::size_t>();
    c.data_len_max = j.at("data_len").at(1).get<std::size_t>();
    c.coin_bias = j.at("coin_bias").get<double>();
    c.vlen_max = j.at("vlen_max").get<std::uint32_t>();
    c.oracle_profile = j.at("oracle_profile").get<bool>();
  } catch (const nlohmann::json::exception &e) {
    throw ModelError(std::string("malformed config snapshot: ") + e.what());
  }
  return c;
}

std::string Generator::listing_digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto &d : *defs_) {
    h = fnv1a(d.prototype(), h);
    h = fnv1a(std::to_string(d.alias_count) + "\n", h);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Builder {
  const GenConfig &cfg;
  CaseSkeleton &sk;
  Rng &rng;
  const std::map<std::string, std::vector<const IntrinsicDef *>> &loads;
  const std::map<std::string, std::vector<const IntrinsicDef *>> &stores;

  bool off_ratio(const VectorType &t) const { return t.ratio() != sk.ratio; }

  std::string version_name(int reg, int version) const {
    std::string n = sk.alloc.regs[reg].name();
    return version == 0 ? n : n + "_v" + std::to_string(version);
  }

  int add_array(ArrayDecl a) {
    sk.arrays.push_back(std::move(a));
    return static_cast<int>(sk.arrays.size()) - 1;
  }

  int add_mask_array(const std::string &name) {
    ArrayDecl a;
    a.name = name;
    a.role = ArrayRole::MaskSource;
    a.kind = ElemKind::Uint;
    a.width = 8;
    a.length = sk.data_len;
    for (std::size_t i = 0; i < sk.data_len; ++i) a.init.push_back(rng.below(2));
    return add_array(std::move(a));
  }

  // vmseq(vle8(p_mask, vl), 1, vl): mask bits from a byte array.
  Expr mask_from(int array, std::uint32_t r, const Expr &vl) {
    VectorType u8 = u8_for_ratio(r);
    Expr bytes = call(h_vle8(u8), {ptr(array), vl});
    return call(h_vmseq(u8, r), {bytes, int_expr(1, "uint8_t"), vl});
  }

  Expr zero_of(const VectorType &t, const Expr &vl) {
    if (t.is_tuple()) {
      Expr f = zero_of(t.field_type(), vl);
      std::vector<Expr> fields(t.nfields(), f);
      return call(h_vcreate(t), fields);
    }
    ScalarValue z{t.kind(), t.sew(), 0};
    return call(h_splat(t), {scalar_expr(z), vl});
  }

  // Offsets vid * segment bytes, as the def's index type.
  Expr index_vector(const VectorType &idx, const VectorType &data, const Expr &vl) {
    Expr vid = call(h_vid(idx), {vl});
    std::uint64_t seg = static_cast<std::uint64_t>(data.nfields()) * data.sew() / 8;
    int sh = log2_exact(seg);
    if (sh == 0) return vid;
    if (sh > 0) return call(h_vx("vsll", idx, "size_t"), {vid, int_expr(sh, "size_t"), vl});
    return call(h_vx("vmul", idx, idx.elem_c_type()), {vid, int_expr(seg, idx.elem_c_type()), vl});
  }

  bool eligible(const IntrinsicDef &d, const VectorType &t) const {
    const VectorType *idx = index_param_type(d);
    if (idx && !index_fits(t, *idx, cfg.vlen_max)) return false;
    if (off_ratio(t) && (idx || d.is_masked() || d.param_index("vd") >= 0)) return false;
    return true;
  }

  const IntrinsicDef *pick(const std::map<std::string, std::vector<const IntrinsicDef *>> &pool,
                           const VectorType &t) {
    std::vector<const IntrinsicDef *> ok;
    auto it = pool.find(t.token());
    if (it != pool.end())
      for (const auto *d : it->second)
        if (eligible(*d, t)) ok.push_back(d);
    if (ok.empty()) return nullptr;
    return ok[rng.below(ok.size())];
  }

  // Array shape and pointer stride for a data access of type t.
  ArrayDecl data_array(const std::string &name, ArrayRole role, const VectorType &t, int s) {
    ArrayDecl a;
    a.name = name;
    a.role = role;
    a.kind = t.kind();
    a.width = t.sew();
    a.advance = static_cast<std::size_t>(s) * t.nfields();
    a.length = sk.data_len * a.advance;
    return a;
  }

  Stmt load_stmt(int reg, int i, int j) {
    const VReg &r = sk.alloc.regs[reg];
    const VectorType &t = r.vtype;
    const bool off = off_ratio(t);
    const Expr vl = vl_expr(t, off);
    MemAccess acc;
    acc.reg = reg;
    acc.version = 0;
    acc.off_ratio = off;
    Stmt st;
    st.kind = ScheduleItem::Kind::Prefix;
    st.owner = i;
    st.intra = j;
    st.decl_type = t.c_name();
    st.decl_name = version_name(reg, 0);
    const std::string aname = "in_" + std::to_string(reg);
    if (t.is_bool()) {
      acc.array = add_mask_array(aname);
      st.expr = mask_from(acc.array, t.ratio(), vl);
      sk.loads[i].push_back(acc);
      return st;
    }
    const IntrinsicDef *d = pick(loads, t);
    if (!d) d = h_unit_load(t);
    acc.def = d;
    const bool strided = d->param_index("rs2") >= 0 && !index_param_type(*d);
    acc.stride_mult = strided ? static_cast<int>(1 + rng.below(2)) : 1;
    ArrayDecl a = data_array(aname, ArrayRole::LoadSource, t, acc.stride_mult);
    for (std::size_t e = 0; e < a.length; ++e)
      a.init.push_back(gen_scalar(t.kind(), t.sew(), rng).bits);
    acc.array = add_array(std::move(a));
    std::vector<Expr> args;
    for (const auto &p : d->params) {
      if (p.name == "rs1") {
        args.push_back(ptr(acc.array));
      } else if (p.name == "rs2") {
        if (p.type.is_vector()) {
          args.push_back(index_vector(p.type.vtype, t, vl));
        } else {
          std::uint64_t bytes = static_cast<std::uint64_t>(acc.stride_mult) * t.nfields() * t.sew() / 8;
          args.push_back(int_expr(bytes, "ptrdiff_t"));
        }
      } else if (p.name == "vd") {
        args.push_back(zero_of(t, vl));
      } else if (p.name == "vm") {
        acc.mask_array = add_mask_array("mask_" + aname);
        args.push_back(mask_from(acc.mask_array, t.ratio(), vl));
      } else if (p.role == ParamRole::VlCount) {
        args.push_back(vl);
      } else {
        throw ModelError("no argument rule for load parameter " + p.name + " of " +
                         d->full_name);
      }
    }
    st.expr = call(d, std::move(args));
    sk.loads[i].push_back(acc);
    return st;
  }

  Stmt store_stmt(int reg, int version, int i, int j) {
    const VReg &r = sk.alloc.regs[reg];
    const VectorType &t = r.vtype;
    const bool off = off_ratio(t);
    const Expr vl = vl_expr(t, off);
    MemAccess acc;
    acc.reg = reg;
    acc.version = version;
    acc.off_ratio = off;
    Stmt st;
    st.kind = ScheduleItem::Kind::Suffix;
    st.owner = i;
    st.intra = j;
    const std::string aname = "out_" + std::to_string(i);
    const Expr value = var(version_name(reg, version));
    if (t.is_bool()) {
      ArrayDecl a;
      a.name = aname;
      a.role = ArrayRole::StoreDestination;
      a.kind = ElemKind::Uint;
      a.width = 8;
      a.length = sk.data_len;
      acc.array = add_array(std::move(a));
      VectorType u8 = u8_for_ratio(t.ratio());
      Expr zeros = call(h_splat(u8), {scalar_expr({ElemKind::Uint, 8, 0}), vl});
      Expr bytes = call(h_vmerge(u8, t.ratio()),
                        {zeros, int_expr(1, "uint8_t"), value, vl});
      st.expr = call(h_vse8(u8), {ptr(acc.array), bytes, vl});
      sk.stores[i].push_back(acc);
      return st;
    }
    const IntrinsicDef *d = pick(stores, t);
    if (!d) d = h_unit_store(t);
    acc.def = d;
    const bool strided = d->param_index("rs2") >= 0 && !index_param_type(*d);
    acc.stride_mult = strided ? static_cast<int>(1 + rng.below(2)) : 1;
    acc.array = add_array(data_array(aname, ArrayRole::StoreDestination, t, acc.stride_mult));
    std::vector<Expr> args;
    for (const auto &p : d->params) {
      if (p.name == "rs1") {
        args.push_back(ptr(acc.array));
      } else if (p.name == "rs2") {
        if (p.type.is_vector()) {
          args.push_back(index_vector(p.type.vtype, t, vl));
        } else {
          std::uint64_t bytes = static_cast<std::uint64_t>(acc.stride_mult) * t.nfields() * t.sew() / 8;
          args.push_back(int_expr(bytes, "ptrdiff_t"));
        }
      } else if (p.name == "vs3") {
        args.push_back(value);
      } else if (p.name == "vm") {
        acc.mask_array = add_mask_array("mask_" + aname);
        args.push_back(mask_from(acc.mask_array, t.ratio(), vl));
      } else if (p.role == ParamRole::VlCount) {
        args.push_back(vl);
      } else {
        throw ModelError("no argument rule for store parameter " + p.name + " of " +
                         d->full_name);
      }
    }
    st.expr = call(d, std::move(args));
    sk.stores[i].push_back(acc);
    return st;
  }

  Expr synth_arg(const IntrinsicDef &d, const OpTraits &tr, const Param &p, OpSynth &syn) {
    switch (p.role) {
      case ParamRole::VlCount: return vl_expr({}, false);
      case ParamRole::RoundingModeFrm: {
        Expr e = special(EK::Enum, rng.below(5));
        e.name = kFrm[e.value];
        return e;
      }
      case ParamRole::RoundingModeVxrm: {
        Expr e = special(EK::Enum, rng.below(4));
        e.name = kVxrm[e.value];
        return e;
      }
      default: break;
    }
    if (p.type.is_vector()) {
      const VectorType &u = p.type.vtype;
      if (tr.rule == UbRule::CompressMask) return call(h_vmset(u.ratio()), {vl_expr({}, false)});
      // Gather index: identity or reversal of the active window.
      Expr vid = call(h_vid(u), {vl_expr({}, false)});
      if (rng.chance(0.5)) return vid;
      return call(h_vx("vrsub", u, u.elem_c_type()),
                  {vid, special(EK::VlMinus1, 0, u.elem_c_type()), vl_expr({}, false)});
    }
    if (p.type.kind == SemType::Kind::Scalar)
      return scalar_expr(gen_scalar(p.type.elem_kind, p.type.width, rng));
    if (p.type.kind == SemType::Kind::SizeT) {
      if (p.name == "index") {
        int count = 1;
        for (const auto &t : d.vector_types())
          if (t.is_tuple()) count = t.nfields();
        if (count == 1) {
          int lo = 3, hi = -3;
          for (const auto &t : d.vector_types()) {
            lo = std::min(lo, t.lmul_log2());
            hi = std::max(hi, t.lmul_log2());
          }
          count = 1 << (hi - lo);
        }
        syn.tuple_index = static_cast<int>(rng.below(count));
        return int_expr(syn.tuple_index, "size_t");
      }
      if (tr.rule == UbRule::SlideUp) return special(EK::VlModPlus1, rng.below(1u << 16));
      if (tr.rule == UbRule::SlideDown) {
        if (rng.chance(0.5)) return int_expr(0, "size_t");
        syn.slidedown_clamped = true;
        return special(EK::VlModPlus1, rng.below(1u << 16));
      }
      if (tr.rule == UbRule::GatherScalarIndex) return special(EK::VlMod, rng.below(1u << 16));
      return int_expr(rng.below(64), "size_t");
    }
    throw ModelError("no argument rule for parameter " + p.name + " of " + d.full_name);
  }

  Stmt op_stmt(int i) {
    const OpInstance &op = sk.ops[i];
    const IntrinsicDef &d = *op.def;
    const OpTraits tr = traits_of(d);
    OpSynth &syn = sk.synth[i];
    std::vector<Expr> args;
    for (std::size_t k = 0; k < d.params.size(); ++k) {
      int reg = op.bound_params[k];
      if (reg >= 0) {
        args.push_back(var(version_name(reg, sk.param_version[i][k])));
      } else {
        args.push_back(synth_arg(d, tr, d.params[k], syn));
      }
    }
    Stmt st;
    st.kind = ScheduleItem::Kind::Op;
    st.owner = i;
    st.expr = call(&d, std::move(args));
    if (op.bound_return) {
      int reg = *op.bound_return;
      st.decl_type = d.return_type.vtype.c_name();
      st.decl_name = version_name(reg, sk.return_version[i]);
      st.silence = sk.alloc.regs[reg].quarantined;
    } else if (d.return_type.kind != SemType::Kind::Void) {
      st.discard = true;
    }
    return st;
  }
};

}  // namespace

CaseSkeleton Generator::build(std::uint64_t seed) const {
  CaseSkeleton sk;
  sk.seed = seed;
  Rng rng(derive_seed(seed, 0));
  const auto &rt = pools_->ratio_types;
  sk.ratio_type = rt.size() == 1 ? rt[0] : rt[rng.below(rt.size())];
  sk.ratio = sk.ratio_type.ratio();
  sk.data_len = static_cast<std::size_t>(
      rng.range(static_cast<std::int64_t>(cfg_.data_len_min),
                static_cast<std::int64_t>(cfg_.data_len_max)));
  std::size_t n = static_cast<std::size_t>(
      rng.range(static_cast<std::int64_t>(cfg_.seq_len_min),
                static_cast<std::int64_t>(cfg_.seq_len_max)));
  const auto &cands = pools_->candidates.at(sk.ratio);
  sk.ops = make_instances(select_sequence(cands, n, rng));
  AllocConfig ac;
  ac.coin_bias = cfg_.coin_bias;
  sk.alloc = allocate(sk.ops, rng, ac);
  sk.ps = derive_prefix_suffix(sk.ops, sk.alloc.regs);

  // Register versions: a load defines version 0 of a memory register; every
  // write defines the next version.
  std::vector<int> last(sk.alloc.regs.size(), -1);
  for (const auto &r : sk.alloc.regs)
    if (r.from_memory) last[r.id] = 0;
  sk.param_version.resize(n);
  sk.return_version.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &op = sk.ops[i];
    sk.param_version[i].assign(op.bound_params.size(), -1);
    for (std::size_t k = 0; k < op.bound_params.size(); ++k)
      if (op.bound_params[k] >= 0) sk.param_version[i][k] = last[op.bound_params[k]];
    if (op.bound_return) sk.return_version[i] = ++last[*op.bound_return];
  }

  sk.synth.resize(n);
  sk.loads.resize(n);
  sk.stores.resize(n);
  sk.P.resize(n);
  sk.S.resize(n);
  sk.I.resize(n);
  Builder b{cfg_, sk, rng, pools_->loads, pools_->stores};
  for (std::size_t i = 0; i < n; ++i) {
    const int ii = static_cast<int>(i);
    for (std::size_t j = 0; j < sk.ps.P[i].size(); ++j)
      sk.P[i].push_back(b.load_stmt(sk.ps.P[i][j], ii, static_cast<int>(j)));
    sk.I[i] = b.op_stmt(ii);
    for (std::size_t j = 0; j < sk.ps.S[i].size(); ++j)
      sk.S[i].push_back(
          b.store_stmt(sk.ps.S[i][j], sk.return_version[i], ii, static_cast<int>(j)));
  }

  sk.states = analyze_agnostic(sk);
  for (std::size_t a = 0; a < sk.arrays.size(); ++a) {
    if (sk.arrays[a].role != ArrayRole::StoreDestination) continue;
    for (std::size_t e = 0; e < sk.arrays[a].length; ++e)
      if (sk.states.touched[a][e] && sk.states.arrays[a][e])
        sk.manifest.push_back({static_cast<int>(a), e});
  }
  return sk;
}

ProgramCase Generator::emit(const CaseSkeleton &sk, ScheduleMode mode) const {
  Rng rng(derive_seed(sk.seed, 1));
  Schedule sched = schedule(mode, sk.ps, rng);
  ProgramCase pc;
  pc.seed = sk.seed;
  pc.mode = mode;
  pc.manifest = sk.manifest;
  pc.config_snapshot = snapshot_;
  ProgramIR &ir = pc.ir;
  ir.seed = sk.seed;
  ir.mode = mode;
  ir.ratio_type = sk.ratio_type;
  ir.data_len = sk.data_len;
  ir.arrays = sk.arrays;
  ir.manifest = sk.manifest;
  for (const auto &it : sched.items) {
    switch (it.kind) {
      case ScheduleItem::Kind::Prefix:
        ir.body.push_back(sk.P[it.owner_op_index][it.intra_index]);
        break;
      case ScheduleItem::Kind::Op: ir.body.push_back(sk.I[it.owner_op_index]); break;
      case ScheduleItem::Kind::Suffix:
        ir.body.push_back(sk.S[it.owner_op_index][it.intra_index]);
        break;
    }
  }
  std::string header = "rvfuzz case seed=" + std::to_string(sk.seed) + " mode=" +
                       to_string(mode) + " ratio_type=" + sk.ratio_type.token() +
                       " data_len=" + std::to_string(sk.data_len) +
                       " ops=" + std::to_string(sk.ops.size()) + "\nconfig " + snapshot_;
  pc.source = render_c(ir, header);
  return pc;
}

ProgramCase Generator::generate(std::uint64_t seed, ScheduleMode mode) const {
  return emit(build(seed), mode);
}

}  // namespace rvfuzz
