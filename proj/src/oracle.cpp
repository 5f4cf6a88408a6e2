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

#include "rvfuzz/oracle.hpp"

#include <map>
#include <stdexcept>

#include "rvfuzz/semantics.hpp"

namespace rvfuzz {

namespace {

struct Unsupported {
  std::string what;
};

struct Val {
  enum class K { Vec, Num, Ptr } k = K::Num;
  VectorType t;
  std::vector<std::uint64_t> e;
  std::uint64_t num = 0;
  int array = -1;
};

int elem_width(const VectorType &t) { return t.is_bool() ? 1 : t.sew(); }

std::int64_t sext(std::uint64_t v, int w) {
  return ScalarValue{ElemKind::Int, w, v}.as_signed();
}

class Machine {
 public:
  Machine(const ProgramIR &ir, const EvalOptions &o) : ir_(ir), o_(o) {
    if (o.vlen < 64 || (o.vlen & (o.vlen - 1)))
      throw std::invalid_argument("vlen must be a power of two >= 64");
    for (const auto &a : ir.arrays) {
      std::vector<std::uint64_t> m(a.length, 0);
      for (std::size_t i = 0; i < a.init.size() && i < a.length; ++i)
        m[i] = a.init[i] & width_mask(a.width);
      mem_.push_back(std::move(m));
      off_.push_back(0);
    }
  }

  std::string run() {
    const std::size_t vmax_loop = vmax(ir_.ratio_type);
    for (std::uint64_t avl = ir_.data_len; avl > 0; avl -= vl_) {
      vl_ = std::min<std::uint64_t>(avl, vmax_loop);
      vars_.clear();
      for (const auto &s : ir_.body) {
        Val v = eval(s.expr);
        if (!s.decl_name.empty() && !s.decl_type.empty()) vars_[s.decl_name] = std::move(v);
      }
      for (std::size_t a = 0; a < ir_.arrays.size(); ++a) off_[a] += ir_.arrays[a].advance * vl_;
    }
    std::string out;
    if (ir_.manifest.empty()) out = std::string(kNoDefinedElements) + "\n";
    for (const auto &pe : ir_.manifest) {
      const ArrayDecl &a = ir_.arrays.at(pe.array);
      out += format_print_line(a, pe.index, mem_.at(pe.array).at(pe.index)) + "\n";
    }
    return out;
  }

 private:
  const ProgramIR &ir_;
  EvalOptions o_;
  std::vector<std::vector<std::uint64_t>> mem_;
  std::vector<std::size_t> off_;
  std::map<std::string, Val> vars_;
  std::uint64_t vl_ = 0;

  std::size_t vmax(const VectorType &t) const {
    std::size_t n = o_.vlen / t.ratio();
    if (n == 0) throw Unsupported{"type " + t.token() + " has no elements at this VLEN"};
    return n;
  }

  std::uint64_t poison(int width) const {
    if (width == 1) return o_.poison & 1;
    std::uint64_t v = 0;
    for (int b = 0; b < width; b += 8) v |= std::uint64_t{o_.poison} << b;
    return v & width_mask(width);
  }

  std::uint64_t &at(int array, std::int64_t idx) {
    auto &m = mem_.at(array);
    if (idx < 0 || static_cast<std::uint64_t>(idx) >= m.size())
      throw BoundsError("access " + ir_.arrays[array].name + "[" + std::to_string(idx) +
                        "] outside length " + std::to_string(m.size()));
    return m[static_cast<std::size_t>(idx)];
  }

  Val eval(const Expr &e) {
    Val v;
    switch (e.kind) {
      case Expr::Kind::Call: {
        std::vector<Val> args;
        for (const auto &a : e.args) args.push_back(eval(a));
        return call(*e.def, args);
      }
      case Expr::Kind::Var: {
        auto it = vars_.find(e.name);
        if (it == vars_.end()) throw std::logic_error("use before definition: " + e.name);
        return it->second;
      }
      case Expr::Kind::Ptr:
        v.k = Val::K::Ptr;
        v.array = e.array;
        return v;
      case Expr::Kind::Vl: v.num = vl_; return v;
      case Expr::Kind::VlFor: v.num = std::min<std::uint64_t>(vl_, vmax(e.vtype)); return v;
      case Expr::Kind::Int: v.num = e.value; return v;
      case Expr::Kind::Scalar:
        if (e.scalar.kind == ElemKind::Float) throw Unsupported{"float scalar"};
        v.num = e.scalar.bits;
        return v;
      case Expr::Kind::Enum: throw Unsupported{"rounding mode " + e.name};
      case Expr::Kind::VlMod: v.num = e.value % vl_; return v;
      case Expr::Kind::VlModPlus1: v.num = e.value % (vl_ + 1); return v;
      case Expr::Kind::VlMinus1: v.num = vl_ - 1; return v;
    }
    return v;
  }

  static const Val *arg(const IntrinsicDef &d, const std::vector<Val> &args, const char *name) {
    int i = d.param_index(name);
    return i < 0 ? nullptr : &args.at(i);
  }

  void check_types(const IntrinsicDef &d) const {
    for (const auto &t : d.vector_types())
      if (t.kind() == ElemKind::Float || t.is_tuple())
        throw Unsupported{d.full_name + ": float or tuple type"};
  }

  // Element address for access i, in elements from the array start.
  std::int64_t address(const IntrinsicDef &d, const std::vector<Val> &args, int array,
                       int esz, std::size_t i) {
    std::int64_t base = static_cast<std::int64_t>(off_[array]);
    const Val *rs2 = arg(d, args, "rs2");
    if (!rs2) return base + static_cast<std::int64_t>(i);
    std::int64_t bytes;
    if (rs2->k == Val::K::Vec) {
      bytes = static_cast<std::int64_t>(rs2->e.at(i));
    } else {
      bytes = static_cast<std::int64_t>(rs2->num) * static_cast<std::int64_t>(i);
    }
    if (bytes % esz != 0) throw Unsupported{"misaligned offset in " + d.full_name};
    return base + bytes / esz;
  }

  Val call(const IntrinsicDef &d, const std::vector<Val> &args) {
    check_types(d);
    const std::string &mn = d.name_parts.mnemonic;
    const std::string head = mnemonic_head(mn);
    const Val *vlv = arg(d, args, "vl");
    if (!vlv) throw Unsupported{d.full_name + ": no vl operand"};
    const std::uint64_t vl = vlv->num;
    const bool masked = d.is_masked();
    const std::string pol = d.policy();
    const bool tu = pol.rfind("tu", 0) == 0;
    const bool mu = pol == "tumu" || pol == "mu";
    const Val *vm = masked ? arg(d, args, "vm") : nullptr;
    const Val *vd = arg(d, args, "vd");
    auto active = [&](std::size_t i) { return !vm || (vm->e.at(i) & 1); };

    if (d.category == Category::Store) {
      const Val *val = arg(d, args, "vs3");
      const Val *p = arg(d, args, "rs1");
      if (!val || !p || p->k != Val::K::Ptr) throw Unsupported{d.full_name};
      if (vl > vmax(val->t)) throw std::logic_error("vl above vlmax in " + d.full_name);
      const int esz = val->t.sew() / 8;
      for (std::size_t i = 0; i < vl; ++i)
        if (active(i)) at(p->array, address(d, args, p->array, esz, i)) = val->e[i];
      return {};
    }

    if (!d.return_type.is_vector()) throw Unsupported{d.full_name + ": scalar result"};
    Val out;
    out.k = Val::K::Vec;
    out.t = d.return_type.vtype;
    const std::size_t n = vmax(out.t);
    const int w = elem_width(out.t);
    if (vl > n) throw std::logic_error("vl above vlmax in " + d.full_name);
    if ((tu || mu) && !vd) throw Unsupported{d.full_name + ": policy without vd"};
    out.e.assign(n, poison(w));
    // Tail: undisturbed copies vd; mask results are always tail-agnostic.
    if (tu && !out.t.is_bool())
      for (std::size_t i = vl; i < n; ++i) out.e[i] = vd->e.at(i);

    if (d.category == Category::Load) {
      const Val *p = arg(d, args, "rs1");
      if (!p || p->k != Val::K::Ptr) throw Unsupported{d.full_name};
      const int esz = out.t.sew() / 8;
      for (std::size_t i = 0; i < vl; ++i) {
        if (active(i)) out.e[i] = at(p->array, address(d, args, p->array, esz, i));
        else if (mu) out.e[i] = vd->e.at(i);
      }
      return out;
    }
    if (d.category != Category::Operation) throw Unsupported{d.full_name};

    const Val *vs2 = arg(d, args, "vs2");
    if (!vs2) vs2 = arg(d, args, "vs");
    const Val *vs1 = arg(d, args, "vs1");
    const Val *rs1 = arg(d, args, "rs1");
    const Val *v0 = arg(d, args, "v0");
    const int sw = vs2 && vs2->k == Val::K::Vec ? elem_width(vs2->t) : w;
    auto opa = [&](std::size_t i) { return vs2 ? vs2->e.at(i) : 0; };
    auto opb = [&](std::size_t i) -> std::uint64_t {
      if (vs1 && vs1->k == Val::K::Vec) return vs1->e.at(i);
      if (rs1) return rs1->num & width_mask(sw);
      return 0;
    };
    auto sh = [&](std::size_t i) {
      std::uint64_t b = vs1 && vs1->k == Val::K::Vec ? vs1->e.at(i) : rs1 ? rs1->num : 0;
      return b & static_cast<std::uint64_t>(sw - 1);
    };
    const bool uns = head.back() == 'u';
    auto cmp = [&](std::size_t i, auto f) -> std::uint64_t {
      std::uint64_t a = opa(i), b = opb(i);
      if (uns || head == "vmseq" || head == "vmsne") return f(a, b) ? 1 : 0;
      return f(sext(a, sw), sext(b, sw)) ? 1 : 0;
    };
    auto bit = [](std::uint64_t x) { return x & 1; };

    for (std::size_t i = 0; i < vl; ++i) {
      if (!active(i)) {
        if (mu) out.e[i] = vd->e.at(i);
        continue;
      }
      std::uint64_t r;
      if (head == "vadd") r = opa(i) + opb(i);
      else if (head == "vsub") r = opa(i) - opb(i);
      else if (head == "vrsub") r = opb(i) - opa(i);
      else if (head == "vmul") r = opa(i) * opb(i);
      else if (head == "vand") r = opa(i) & opb(i);
      else if (head == "vor") r = opa(i) | opb(i);
      else if (head == "vxor") r = opa(i) ^ opb(i);
      else if (head == "vsll") r = opa(i) << sh(i);
      else if (head == "vsrl") r = opa(i) >> sh(i);
      else if (head == "vsra") r = static_cast<std::uint64_t>(sext(opa(i), sw) >> sh(i));
      else if (head == "vmseq") r = cmp(i, [](auto a, auto b) { return a == b; });
      else if (head == "vmsne") r = cmp(i, [](auto a, auto b) { return a != b; });
      else if (head == "vmslt" || head == "vmsltu") r = cmp(i, [](auto a, auto b) { return a < b; });
      else if (head == "vmsle" || head == "vmsleu") r = cmp(i, [](auto a, auto b) { return a <= b; });
      else if (head == "vmsgt" || head == "vmsgtu") r = cmp(i, [](auto a, auto b) { return a > b; });
      else if (head == "vmsge" || head == "vmsgeu") r = cmp(i, [](auto a, auto b) { return a >= b; });
      else if (head == "vmand") r = bit(opa(i)) & bit(opb(i));
      else if (head == "vmnand") r = !(bit(opa(i)) & bit(opb(i)));
      else if (head == "vmandn") r = bit(opa(i)) & !bit(opb(i));
      else if (head == "vmor") r = bit(opa(i)) | bit(opb(i));
      else if (head == "vmnor") r = !(bit(opa(i)) | bit(opb(i)));
      else if (head == "vmorn") r = bit(opa(i)) | !bit(opb(i));
      else if (head == "vmxor") r = bit(opa(i)) ^ bit(opb(i));
      else if (head == "vmxnor") r = !(bit(opa(i)) ^ bit(opb(i)));
      else if (head == "vmmv") r = bit(opa(i));
      else if (head == "vmnot") r = !bit(opa(i));
      else if (head == "vmset") r = 1;
      else if (head == "vmclr") r = 0;
      else if (head == "vid") r = i;
      else if (head == "vmerge" && v0) r = (v0->e.at(i) & 1) ? opb(i) : opa(i);
      else if (mn.rfind("vmv_v_x", 0) == 0) r = rs1 ? rs1->num : 0;
      else throw Unsupported{d.full_name};
      out.e[i] = r & width_mask(w);
    }
    return out;
  }
};

}  // namespace

EvalResult evaluate(const ProgramIR &ir, const EvalOptions &opts) {
  EvalResult r;
  try {
    Machine m(ir, opts);
    r.output = m.run();
  } catch (const Unsupported &u) {
    r.status = EvalResult::Status::Unsupported;
    r.message = u.what;
  }
  return r;
}

}  // namespace rvfuzz
