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

#include "rvfuzz/listing_gen.hpp"

#include <functional>
#include <vector>

#include "rvfuzz/types.hpp"

namespace rvfuzz {

namespace {

using K = ElemKind;

// Policy variants an intrinsic family provides.
enum class Pol { None, Full, MaskOnly, TailOnly, Reduction };
// Which non-policy overloaded forms exist.
enum class Ovl { None, Both, MaskedOnly, PolicyOnly };

struct Fn {
  std::string ret;
  std::string mnem;
  std::vector<std::string> toks;
  std::vector<std::pair<std::string, std::string>> params;  // (type, name)
  bool rm = false;
  bool maskable = false;
  int mask_ratio = 0;
  Pol pol = Pol::None;
  bool has_vd = false;
  Ovl ovl = Ovl::None;
  std::string ovl_name;
};

class Builder {
 public:
  explicit Builder(ListingKind kind) : kind_(kind) {}

  void section(const std::string &title) { out_ += "// " + title + "\n"; }

  void add(const Fn &f) {
    switch (kind_) {
      case ListingKind::Explicit: emit_plain(f, explicit_name(f)); break;
      case ListingKind::ExplicitPolicy: emit_policy(f, explicit_name(f)); break;
      case ListingKind::Implicit: emit_plain_overloaded(f); break;
      case ListingKind::ImplicitPolicy:
        if (f.pol != Pol::None) emit_policy(f, overload_base(f));
        break;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  static std::string explicit_name(const Fn &f) {
    std::string s = "__riscv_" + f.mnem;
    for (const auto &t : f.toks) s += "_" + t;
    if (f.rm) s += "_rm";
    return s;
  }

  static std::string overload_base(const Fn &f) {
    std::string s = "__riscv_" + f.ovl_name;
    if (f.rm) s += "_rm";
    return s;
  }

  static std::string mask_type(const Fn &f) {
    return "vbool" + std::to_string(f.mask_ratio) + "_t";
  }

  void line(const std::string &ret, const std::string &name,
            const std::vector<std::pair<std::string, std::string>> &params) {
    out_ += ret + " " + name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out_ += ", ";
      const auto &[ty, nm] = params[i];
      out_ += ty;
      if (ty.back() != '*') out_ += ' ';
      out_ += nm;
    }
    out_ += ");\n";
  }

  static std::vector<std::pair<std::string, std::string>> with_front(
      std::vector<std::pair<std::string, std::string>> front,
      const std::vector<std::pair<std::string, std::string>> &rest) {
    front.insert(front.end(), rest.begin(), rest.end());
    return front;
  }

  void emit_plain(const Fn &f, const std::string &name) {
    line(f.ret, name, f.params);
    if (f.maskable)
      line(f.ret, name + "_m", with_front({{mask_type(f), "vm"}}, f.params));
  }

  void emit_plain_overloaded(const Fn &f) {
    if (f.ovl == Ovl::None || f.ovl == Ovl::PolicyOnly) return;
    std::string name = overload_base(f);
    if (f.ovl == Ovl::Both) line(f.ret, name, f.params);
    if (f.maskable)
      line(f.ret, name, with_front({{mask_type(f), "vm"}}, f.params));
  }

  void emit_policy(const Fn &f, const std::string &base) {
    std::vector<std::pair<std::string, std::string>> vd;
    if (!f.has_vd) vd.push_back({f.ret, "vd"});
    auto unmasked = with_front(vd, f.params);
    auto masked = with_front({{mask_type(f), "vm"}}, unmasked);
    switch (f.pol) {
      case Pol::None: break;
      case Pol::Full:
        line(f.ret, base + "_tu", unmasked);
        line(f.ret, base + "_tum", masked);
        line(f.ret, base + "_tumu", masked);
        line(f.ret, base + "_mu", masked);
        break;
      case Pol::MaskOnly: line(f.ret, base + "_mu", masked); break;
      case Pol::TailOnly: line(f.ret, base + "_tu", unmasked); break;
      case Pol::Reduction:
        line(f.ret, base + "_tu", unmasked);
        line(f.ret, base + "_tum", masked);
        break;
    }
  }

  ListingKind kind_;
  std::string out_;
};

std::vector<VectorType> types_of(K kind) {
  std::vector<VectorType> out;
  for (int sew : {8, 16, 32, 64})
    for (int l = -3; l <= 3; ++l)
      if (is_legal_data_type(kind, sew, l))
        out.push_back(VectorType::data(kind, sew, l));
  return out;
}

std::vector<VectorType> types_of(std::initializer_list<K> kinds) {
  std::vector<VectorType> out;
  for (K k : kinds) {
    auto v = types_of(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// SEW and LMUL both scaled by 2^shift; nullopt when illegal.
std::optional<VectorType> rescale(const VectorType &t, int shift,
                                  K kind) {
  int sew = shift >= 0 ? t.sew() << shift : t.sew() >> -shift;
  int l = t.lmul_log2() + shift;
  if (!is_legal_data_type(kind, sew, l)) return std::nullopt;
  return VectorType::data(kind, sew, l);
}

std::optional<VectorType> widen(const VectorType &t) {
  return rescale(t, 1, t.kind());
}

// Index/offset vector of element width eew for data type t.
std::optional<VectorType> index_type(const VectorType &t, int eew) {
  int shift = 0;
  for (int w = t.sew(); w < eew; w <<= 1) ++shift;
  for (int w = t.sew(); w > eew; w >>= 1) --shift;
  int l = t.lmul_log2() + shift;
  if (!is_legal_data_type(K::Uint, eew, l)) return std::nullopt;
  return VectorType::data(K::Uint, eew, l);
}

std::string cn(const VectorType &t) { return t.c_name(); }
std::string sc(const VectorType &t) { return t.elem_c_type(); }
std::string mask_c(int ratio) { return "vbool" + std::to_string(ratio) + "_t"; }
std::string mask_tok(int ratio) { return "b" + std::to_string(ratio); }

const std::vector<int> kRatios = {1, 2, 4, 8, 16, 32, 64};

using Params = std::vector<std::pair<std::string, std::string>>;

void add_rm_pair(Builder &b, Fn f, bool with_rm, const char *csr) {
  b.add(f);
  if (!with_rm) return;
  f.rm = true;
  auto vl = f.params.back();
  f.params.pop_back();
  f.params.push_back({"unsigned int", csr});
  f.params.push_back(vl);
  b.add(f);
}

void gen_loads_stores(Builder &b) {
  b.section("unit-stride, strided and indexed loads and stores");
  for (const auto &t : types_of({K::Int, K::Uint, K::Float})) {
    std::string w = std::to_string(t.sew());
    std::string ptr = sc(t) + " *";
    std::string cptr = "const " + sc(t) + " *";
    int r = static_cast<int>(t.ratio());
    Fn f;
    f.ret = cn(t);
    f.toks = {t.token()};
    f.maskable = true;
    f.mask_ratio = r;
    f.pol = Pol::Full;

    Fn ld = f;
    ld.mnem = "vle" + w + "_v";
    ld.params = {{cptr, "rs1"}, {"size_t", "vl"}};
    ld.ovl = Ovl::MaskedOnly;
    ld.ovl_name = "vle" + w;
    b.add(ld);

    Fn ff = ld;
    ff.mnem = "vle" + w + "ff_v";
    ff.params = {{cptr, "rs1"}, {"size_t *", "new_vl"}, {"size_t", "vl"}};
    ff.ovl_name = "vle" + w + "ff";
    b.add(ff);

    Fn st = f;
    st.ret = "void";
    st.pol = Pol::None;
    st.mnem = "vse" + w + "_v";
    st.params = {{ptr, "rs1"}, {cn(t), "vs3"}, {"size_t", "vl"}};
    st.ovl = Ovl::Both;
    st.ovl_name = "vse" + w;
    b.add(st);

    Fn lse = ld;
    lse.mnem = "vlse" + w + "_v";
    lse.params = {{cptr, "rs1"}, {"ptrdiff_t", "rs2"}, {"size_t", "vl"}};
    lse.ovl_name = "vlse" + w;
    b.add(lse);

    Fn sse = st;
    sse.mnem = "vsse" + w + "_v";
    sse.params = {{ptr, "rs1"}, {"ptrdiff_t", "rs2"}, {cn(t), "vs3"},
                  {"size_t", "vl"}};
    sse.ovl_name = "vsse" + w;
    b.add(sse);

    for (int eew : {8, 16, 32, 64}) {
      auto idx = index_type(t, eew);
      if (!idx) continue;
      std::string e = std::to_string(eew);
      for (const char *order : {"vloxei", "vluxei"}) {
        Fn x = ld;
        x.mnem = order + e + "_v";
        x.params = {{cptr, "rs1"}, {cn(*idx), "rs2"}, {"size_t", "vl"}};
        x.ovl = Ovl::Both;
        x.ovl_name = order + e;
        b.add(x);
      }
      for (const char *order : {"vsoxei", "vsuxei"}) {
        Fn x = st;
        x.mnem = order + e + "_v";
        x.params = {{ptr, "rs1"}, {cn(*idx), "rs2"}, {cn(t), "vs3"},
                    {"size_t", "vl"}};
        x.ovl_name = order + e;
        b.add(x);
      }
    }
  }
  b.section("mask loads and stores");
  for (int r : kRatios) {
    Fn lm;
    lm.ret = mask_c(r);
    lm.mnem = "vlm_v";
    lm.toks = {mask_tok(r)};
    lm.params = {{"const uint8_t *", "rs1"}, {"size_t", "vl"}};
    b.add(lm);
    Fn sm;
    sm.ret = "void";
    sm.mnem = "vsm_v";
    sm.toks = {mask_tok(r)};
    sm.params = {{"uint8_t *", "rs1"}, {mask_c(r), "vs3"}, {"size_t", "vl"}};
    sm.ovl = Ovl::Both;
    sm.ovl_name = "vsm";
    b.add(sm);
  }
}

void gen_segments(Builder &b) {
  b.section("segment loads and stores");
  for (const auto &t : types_of({K::Int, K::Uint, K::Float})) {
    int lmul_regs = t.lmul_log2() > 0 ? 1 << t.lmul_log2() : 1;
    for (int nf = 2; nf <= 8; ++nf) {
      if (nf * lmul_regs > 8) continue;
      VectorType tt = t.with_nfields(nf);
      std::string w = std::to_string(t.sew());
      std::string n = std::to_string(nf);
      std::string ptr = sc(t) + " *";
      std::string cptr = "const " + sc(t) + " *";
      Fn f;
      f.ret = cn(tt);
      f.toks = {tt.token()};
      f.maskable = true;
      f.mask_ratio = static_cast<int>(t.ratio());
      f.pol = Pol::Full;
      f.ovl = Ovl::MaskedOnly;

      Fn ld = f;
      ld.mnem = "vlseg" + n + "e" + w + "_v";
      ld.params = {{cptr, "rs1"}, {"size_t", "vl"}};
      ld.ovl_name = "vlseg" + n + "e" + w;
      b.add(ld);

      Fn ff = ld;
      ff.mnem = "vlseg" + n + "e" + w + "ff_v";
      ff.params = {{cptr, "rs1"}, {"size_t *", "new_vl"}, {"size_t", "vl"}};
      ff.ovl_name = "vlseg" + n + "e" + w + "ff";
      b.add(ff);

      Fn lss = ld;
      lss.mnem = "vlsseg" + n + "e" + w + "_v";
      lss.params = {{cptr, "rs1"}, {"ptrdiff_t", "rs2"}, {"size_t", "vl"}};
      lss.ovl_name = "vlsseg" + n + "e" + w;
      b.add(lss);

      Fn st = f;
      st.ret = "void";
      st.pol = Pol::None;
      st.ovl = Ovl::Both;
      st.mnem = "vsseg" + n + "e" + w + "_v";
      st.params = {{ptr, "rs1"}, {cn(tt), "vs3"}, {"size_t", "vl"}};
      st.ovl_name = "vsseg" + n + "e" + w;
      b.add(st);

      Fn sss = st;
      sss.mnem = "vssseg" + n + "e" + w + "_v";
      sss.params = {{ptr, "rs1"}, {"ptrdiff_t", "rs2"}, {cn(tt), "vs3"},
                    {"size_t", "vl"}};
      sss.ovl_name = "vssseg" + n + "e" + w;
      b.add(sss);

      for (int eew : {8, 16, 32, 64}) {
        auto idx = index_type(t, eew);
        if (!idx) continue;
        std::string e = std::to_string(eew);
        for (const char *order : {"vloxseg", "vluxseg"}) {
          Fn x = ld;
          x.ovl = Ovl::Both;
          x.mnem = order + n + "ei" + e + "_v";
          x.params = {{cptr, "rs1"}, {cn(*idx), "rs2"}, {"size_t", "vl"}};
          x.ovl_name = order + n + "ei" + e;
          b.add(x);
        }
        for (const char *order : {"vsoxseg", "vsuxseg"}) {
          Fn x = st;
          x.mnem = order + n + "ei" + e + "_v";
          x.params = {{ptr, "rs1"}, {cn(*idx), "rs2"}, {cn(tt), "vs3"},
                      {"size_t", "vl"}};
          x.ovl_name = order + n + "ei" + e;
          b.add(x);
        }
      }
    }
  }
}

// Elementwise op over type t returning ret_t.
Fn elementwise(const std::string &mnem, const VectorType &ret_t,
               Params params, const std::string &ovl_name) {
  Fn f;
  f.ret = cn(ret_t);
  f.mnem = mnem;
  f.toks = {ret_t.token()};
  f.params = std::move(params);
  f.params.push_back({"size_t", "vl"});
  f.maskable = true;
  f.mask_ratio = static_cast<int>(ret_t.ratio());
  f.pol = Pol::Full;
  f.ovl = Ovl::Both;
  f.ovl_name = ovl_name;
  return f;
}

// Binary op with .vv and .vx (or .vf) forms; rhs_vec is the vs1 type.
void binary(Builder &b, const std::string &op, const VectorType &t,
            const VectorType &rhs_vec, const std::string &rhs_scalar,
            bool vv, bool vx, const char *csr = nullptr) {
  bool fl = t.kind() == K::Float;
  if (vv)
    add_rm_pair(b, elementwise(op + "_vv", t, {{cn(t), "vs2"}, {cn(rhs_vec), "vs1"}}, op),
                csr != nullptr, csr ? csr : "");
  if (vx)
    add_rm_pair(b,
                elementwise(op + (fl ? "_vf" : "_vx"), t,
                            {{cn(t), "vs2"}, {rhs_scalar, "rs1"}}, op),
                csr != nullptr, csr ? csr : "");
}

VectorType as_uint(const VectorType &t) { return t.with_kind(K::Uint); }

void gen_integer(Builder &b) {
  b.section("integer arithmetic");
  const auto ints = types_of(K::Int);
  const auto uints = types_of(K::Uint);
  const auto both = types_of({K::Int, K::Uint});

  for (const auto &t : both) {
    for (const char *op : {"vadd", "vsub"}) binary(b, op, t, t, sc(t), true, true);
    binary(b, "vrsub", t, t, sc(t), false, true);
    for (const char *op : {"vand", "vor", "vxor"}) binary(b, op, t, t, sc(t), true, true);
    b.add(elementwise("vnot_v", t, {{cn(t), "vs"}}, "vnot"));
    binary(b, "vsll", t, as_uint(t), "size_t", true, true);
    binary(b, "vmul", t, t, sc(t), true, true);
    for (const char *op : {"vmacc", "vnmsac", "vmadd", "vnmsub"}) {
      Fn vv = elementwise(std::string(op) + "_vv", t,
                          {{cn(t), "vd"}, {cn(t), "vs1"}, {cn(t), "vs2"}}, op);
      vv.has_vd = true;
      b.add(vv);
      Fn vx = elementwise(std::string(op) + "_vx", t,
                          {{cn(t), "vd"}, {sc(t), "rs1"}, {cn(t), "vs2"}}, op);
      vx.has_vd = true;
      b.add(vx);
    }
  }
  for (const auto &t : ints) {
    b.add(elementwise("vneg_v", t, {{cn(t), "vs"}}, "vneg"));
    binary(b, "vsra", t, as_uint(t), "size_t", true, true);
    for (const char *op : {"vmin", "vmax", "vmulh", "vdiv", "vrem"})
      binary(b, op, t, t, sc(t), true, true);
    binary(b, "vmulhsu", t, as_uint(t), as_uint(t).elem_c_type(), true, true);
  }
  for (const auto &t : uints) {
    binary(b, "vsrl", t, t, "size_t", true, true);
    for (const char *op : {"vminu", "vmaxu", "vmulhu", "vdivu", "vremu"})
      binary(b, op, t, t, sc(t), true, true);
  }

  b.section("integer widening and narrowing");
  for (const auto &t : both) {
    auto w = widen(t);
    if (!w) continue;
    bool s = t.kind() == K::Int;
    for (std::string op : {"vwadd", "vwsub"}) {
      if (!s) op += "u";
      b.add(elementwise(op + "_vv", *w, {{cn(t), "vs2"}, {cn(t), "vs1"}}, op + "_vv"));
      b.add(elementwise(op + "_vx", *w, {{cn(t), "vs2"}, {sc(t), "rs1"}}, op + "_vx"));
      b.add(elementwise(op + "_wv", *w, {{cn(*w), "vs2"}, {cn(t), "vs1"}}, op + "_wv"));
      b.add(elementwise(op + "_wx", *w, {{cn(*w), "vs2"}, {sc(t), "rs1"}}, op + "_wx"));
    }
    std::string cvt = s ? "vwcvt" : "vwcvtu";
    b.add(elementwise(cvt + "_x_x_v", *w, {{cn(t), "vs2"}}, cvt + "_x"));
    std::string mul = s ? "vwmul" : "vwmulu";
    b.add(elementwise(mul + "_vv", *w, {{cn(t), "vs2"}, {cn(t), "vs1"}}, mul));
    b.add(elementwise(mul + "_vx", *w, {{cn(t), "vs2"}, {sc(t), "rs1"}}, mul));
    if (s) {
      auto u = as_uint(t);
      b.add(elementwise("vwmulsu_vv", *w, {{cn(t), "vs2"}, {cn(u), "vs1"}}, "vwmulsu"));
      b.add(elementwise("vwmulsu_vx", *w, {{cn(t), "vs2"}, {sc(u), "rs1"}}, "vwmulsu"));
    }
    std::string macc = s ? "vwmacc" : "vwmaccu";
    Fn mvv = elementwise(macc + "_vv", *w,
                         {{cn(*w), "vd"}, {cn(t), "vs1"}, {cn(t), "vs2"}}, macc);
    mvv.has_vd = true;
    b.add(mvv);
    Fn mvx = elementwise(macc + "_vx", *w,
                         {{cn(*w), "vd"}, {sc(t), "rs1"}, {cn(t), "vs2"}}, macc);
    mvx.has_vd = true;
    b.add(mvx);
    if (s) {
      auto u = as_uint(t);
      Fn su = elementwise("vwmaccsu_vv", *w,
                          {{cn(*w), "vd"}, {cn(t), "vs1"}, {cn(u), "vs2"}}, "vwmaccsu");
      su.has_vd = true;
      b.add(su);
      Fn sux = elementwise("vwmaccsu_vx", *w,
                           {{cn(*w), "vd"}, {sc(t), "rs1"}, {cn(u), "vs2"}}, "vwmaccsu");
      sux.has_vd = true;
      b.add(sux);
      Fn us = elementwise("vwmaccus_vx", *w,
                          {{cn(*w), "vd"}, {sc(u), "rs1"}, {cn(t), "vs2"}}, "vwmaccus");
      us.has_vd = true;
      b.add(us);
    }
    // Narrowing ops are named by the narrow type t.
    std::string nsh = s ? "vnsra" : "vnsrl";
    b.add(elementwise(nsh + "_wv", t, {{cn(*w), "vs2"}, {cn(as_uint(t)), "vs1"}}, nsh));
    b.add(elementwise(nsh + "_wx", t, {{cn(*w), "vs2"}, {"size_t", "rs1"}}, nsh));
    b.add(elementwise("vncvt_x_x_w", t, {{cn(*w), "vs2"}}, "vncvt_x"));
  }
  for (const auto &t : both) {
    bool s = t.kind() == K::Int;
    for (int k : {2, 4, 8}) {
      int shift = k == 2 ? 1 : k == 4 ? 2 : 3;
      auto src = rescale(t, -shift, t.kind());
      if (!src) continue;
      std::string op = std::string(s ? "vsext" : "vzext") + "_vf" + std::to_string(k);
      b.add(elementwise(op, t, {{cn(*src), "vs2"}}, op));
    }
  }

  b.section("integer carry and merge");
  for (const auto &t : both) {
    int r = static_cast<int>(t.ratio());
    for (const char *op : {"vadc", "vsbc"}) {
      for (bool vv : {true, false}) {
        Fn f = elementwise(std::string(op) + (vv ? "_vvm" : "_vxm"), t,
                           {{cn(t), "vs2"}, vv ? std::pair{cn(t), std::string("vs1")}
                                               : std::pair{sc(t), std::string("rs1")},
                            {mask_c(r), "v0"}},
                           op);
        f.maskable = false;
        f.pol = Pol::TailOnly;
        b.add(f);
      }
    }
    for (const char *op : {"vmadc", "vmsbc"}) {
      for (int form = 0; form < 4; ++form) {
        bool vv = form % 2 == 0;
        bool carry = form < 2;
        Fn f;
        f.ret = mask_c(r);
        f.mnem = std::string(op) + (vv ? "_vv" : "_vx") + (carry ? "m" : "");
        f.toks = {t.token(), mask_tok(r)};
        f.params = {{cn(t), "vs2"}};
        f.params.push_back(vv ? std::pair{cn(t), std::string("vs1")}
                              : std::pair{sc(t), std::string("rs1")});
        if (carry) f.params.push_back({mask_c(r), "v0"});
        f.params.push_back({"size_t", "vl"});
        f.ovl = Ovl::Both;
        f.ovl_name = op;
        b.add(f);
      }
    }
    for (bool vv : {true, false}) {
      Fn f = elementwise(vv ? "vmerge_vvm" : "vmerge_vxm", t,
                         {{cn(t), "vs2"}, vv ? std::pair{cn(t), std::string("vs1")}
                                             : std::pair{sc(t), std::string("rs1")},
                          {mask_c(r), "v0"}},
                         "vmerge");
      f.maskable = false;
      f.pol = Pol::TailOnly;
      b.add(f);
    }
    Fn mvx = elementwise("vmv_v_x", t, {{sc(t), "rs1"}}, "vmv_v");
    mvx.maskable = false;
    mvx.pol = Pol::TailOnly;
    mvx.ovl = Ovl::PolicyOnly;
    b.add(mvx);
  }
  for (const auto &t : types_of({K::Int, K::Uint, K::Float})) {
    Fn mvv = elementwise("vmv_v_v", t, {{cn(t), "vs1"}}, "vmv_v");
    mvv.maskable = false;
    mvv.pol = Pol::TailOnly;
    b.add(mvv);
  }

  b.section("integer compares");
  for (const auto &t : both) {
    int r = static_cast<int>(t.ratio());
    bool s = t.kind() == K::Int;
    std::vector<std::string> ops = {"vmseq", "vmsne"};
    for (const char *o : {"vmslt", "vmsle", "vmsgt", "vmsge"})
      ops.push_back(std::string(o) + (s ? "" : "u"));
    for (const auto &op : ops) {
      for (bool vv : {true, false}) {
        Fn f;
        f.ret = mask_c(r);
        f.mnem = op + (vv ? "_vv" : "_vx");
        f.toks = {t.token(), mask_tok(r)};
        f.params = {{cn(t), "vs2"}};
        f.params.push_back(vv ? std::pair{cn(t), std::string("vs1")}
                              : std::pair{sc(t), std::string("rs1")});
        f.params.push_back({"size_t", "vl"});
        f.maskable = true;
        f.mask_ratio = r;
        f.pol = Pol::MaskOnly;
        f.ovl = Ovl::Both;
        f.ovl_name = op;
        b.add(f);
      }
    }
  }
}

void gen_fixed_point(Builder &b) {
  b.section("fixed-point arithmetic");
  for (const auto &t : types_of({K::Int, K::Uint})) {
    bool s = t.kind() == K::Int;
    std::string u = s ? "" : "u";
    for (std::string op : {"vsadd", "vssub"}) binary(b, op + u, t, t, sc(t), true, true);
    auto with_vxrm = [&](Fn f) {
      auto vl = f.params.back();
      f.params.pop_back();
      f.params.push_back({"unsigned int", "vxrm"});
      f.params.push_back(vl);
      b.add(f);
    };
    for (std::string op : {"vaadd", "vasub"}) {
      op += u;
      with_vxrm(elementwise(op + "_vv", t, {{cn(t), "vs2"}, {cn(t), "vs1"}}, op));
      with_vxrm(elementwise(op + "_vx", t, {{cn(t), "vs2"}, {sc(t), "rs1"}}, op));
    }
    if (s) {
      with_vxrm(elementwise("vsmul_vv", t, {{cn(t), "vs2"}, {cn(t), "vs1"}}, "vsmul"));
      with_vxrm(elementwise("vsmul_vx", t, {{cn(t), "vs2"}, {sc(t), "rs1"}}, "vsmul"));
    }
    std::string ssh = s ? "vssra" : "vssrl";
    with_vxrm(elementwise(ssh + "_vv", t, {{cn(t), "vs2"}, {cn(as_uint(t)), "vs1"}}, ssh));
    with_vxrm(elementwise(ssh + "_vx", t, {{cn(t), "vs2"}, {"size_t", "rs1"}}, ssh));
    if (auto w = widen(t)) {
      std::string nc = s ? "vnclip" : "vnclipu";
      with_vxrm(elementwise(nc + "_wv", t, {{cn(*w), "vs2"}, {cn(as_uint(t)), "vs1"}}, nc));
      with_vxrm(elementwise(nc + "_wx", t, {{cn(*w), "vs2"}, {"size_t", "rs1"}}, nc));
    }
  }
}

void gen_float(Builder &b) {
  b.section("floating-point arithmetic");
  const auto fl = types_of(K::Float);
  auto rm2 = [&](const Fn &f) { add_rm_pair(b, f, true, "frm"); };
  for (const auto &t : fl) {
    int r = static_cast<int>(t.ratio());
    for (const char *op : {"vfadd", "vfsub", "vfmul", "vfdiv"})
      binary(b, op, t, t, sc(t), true, true, "frm");
    for (const char *op : {"vfrsub", "vfrdiv"})
      binary(b, op, t, t, sc(t), false, true, "frm");
    for (const char *op : {"vfmacc", "vfnmacc", "vfmsac", "vfnmsac", "vfmadd",
                           "vfnmadd", "vfmsub", "vfnmsub"}) {
      Fn vv = elementwise(std::string(op) + "_vv", t,
                          {{cn(t), "vd"}, {cn(t), "vs1"}, {cn(t), "vs2"}}, op);
      vv.has_vd = true;
      rm2(vv);
      Fn vf = elementwise(std::string(op) + "_vf", t,
                          {{cn(t), "vd"}, {sc(t), "rs1"}, {cn(t), "vs2"}}, op);
      vf.has_vd = true;
      rm2(vf);
    }
    rm2(elementwise("vfsqrt_v", t, {{cn(t), "vs2"}}, "vfsqrt"));
    rm2(elementwise("vfrec7_v", t, {{cn(t), "vs2"}}, "vfrec7"));
    b.add(elementwise("vfrsqrt7_v", t, {{cn(t), "vs2"}}, "vfrsqrt7"));
    for (const char *op : {"vfmin", "vfmax", "vfsgnj", "vfsgnjn", "vfsgnjx"})
      binary(b, op, t, t, sc(t), true, true);
    b.add(elementwise("vfneg_v", t, {{cn(t), "vs"}}, "vfneg"));
    b.add(elementwise("vfabs_v", t, {{cn(t), "vs"}}, "vfabs"));
    b.add(elementwise("vfclass_v", as_uint(t), {{cn(t), "vs2"}}, "vfclass"));
    Fn mg = elementwise("vfmerge_vfm", t,
                        {{cn(t), "vs2"}, {sc(t), "rs1"}, {mask_c(r), "v0"}}, "vfmerge");
    mg.maskable = false;
    mg.pol = Pol::TailOnly;
    b.add(mg);
    Fn mvf = elementwise("vfmv_v_f", t, {{sc(t), "rs1"}}, "vfmv_v");
    mvf.maskable = false;
    mvf.pol = Pol::TailOnly;
    mvf.ovl = Ovl::PolicyOnly;
    b.add(mvf);
    for (const char *op : {"vmfeq", "vmfne", "vmflt", "vmfle", "vmfgt", "vmfge"}) {
      for (bool vv : {true, false}) {
        Fn f;
        f.ret = mask_c(r);
        f.mnem = std::string(op) + (vv ? "_vv" : "_vf");
        f.toks = {t.token(), mask_tok(r)};
        f.params = {{cn(t), "vs2"}};
        f.params.push_back(vv ? std::pair{cn(t), std::string("vs1")}
                              : std::pair{sc(t), std::string("rs1")});
        f.params.push_back({"size_t", "vl"});
        f.maskable = true;
        f.mask_ratio = r;
        f.pol = Pol::MaskOnly;
        f.ovl = Ovl::Both;
        f.ovl_name = op;
        b.add(f);
      }
    }
    if (auto w = widen(t)) {
      for (std::string op : {"vfwadd", "vfwsub"}) {
        rm2(elementwise(op + "_vv", *w, {{cn(t), "vs2"}, {cn(t), "vs1"}}, op + "_vv"));
        rm2(elementwise(op + "_vf", *w, {{cn(t), "vs2"}, {sc(t), "rs1"}}, op + "_vf"));
        rm2(elementwise(op + "_wv", *w, {{cn(*w), "vs2"}, {cn(t), "vs1"}}, op + "_wv"));
        rm2(elementwise(op + "_wf", *w, {{cn(*w), "vs2"}, {sc(t), "rs1"}}, op + "_wf"));
      }
      rm2(elementwise("vfwmul_vv", *w, {{cn(t), "vs2"}, {cn(t), "vs1"}}, "vfwmul"));
      rm2(elementwise("vfwmul_vf", *w, {{cn(t), "vs2"}, {sc(t), "rs1"}}, "vfwmul"));
      for (const char *op : {"vfwmacc", "vfwnmacc", "vfwmsac", "vfwnmsac"}) {
        Fn vv = elementwise(std::string(op) + "_vv", *w,
                            {{cn(*w), "vd"}, {cn(t), "vs1"}, {cn(t), "vs2"}}, op);
        vv.has_vd = true;
        rm2(vv);
        Fn vf = elementwise(std::string(op) + "_vf", *w,
                            {{cn(*w), "vd"}, {sc(t), "rs1"}, {cn(t), "vs2"}}, op);
        vf.has_vd = true;
        rm2(vf);
      }
    }
  }
}

void gen_conversions(Builder &b) {
  b.section("floating-point conversions");
  auto rm2 = [&](const Fn &f, bool rm) { add_rm_pair(b, f, rm, "frm"); };
  for (const auto &f : types_of(K::Float)) {
    auto i = f.with_kind(K::Int);
    auto u = f.with_kind(K::Uint);
    rm2(elementwise("vfcvt_x_f_v", i, {{cn(f), "vs2"}}, "vfcvt_x"), true);
    rm2(elementwise("vfcvt_xu_f_v", u, {{cn(f), "vs2"}}, "vfcvt_xu"), true);
    rm2(elementwise("vfcvt_rtz_x_f_v", i, {{cn(f), "vs2"}}, "vfcvt_rtz_x"), false);
    rm2(elementwise("vfcvt_rtz_xu_f_v", u, {{cn(f), "vs2"}}, "vfcvt_rtz_xu"), false);
    rm2(elementwise("vfcvt_f_x_v", f, {{cn(i), "vs2"}}, "vfcvt_f"), true);
    rm2(elementwise("vfcvt_f_xu_v", f, {{cn(u), "vs2"}}, "vfcvt_f"), true);
    if (auto w = widen(f)) {
      auto wi = w->with_kind(K::Int);
      auto wu = w->with_kind(K::Uint);
      rm2(elementwise("vfwcvt_x_f_v", wi, {{cn(f), "vs2"}}, "vfwcvt_x"), true);
      rm2(elementwise("vfwcvt_xu_f_v", wu, {{cn(f), "vs2"}}, "vfwcvt_xu"), true);
      rm2(elementwise("vfwcvt_rtz_x_f_v", wi, {{cn(f), "vs2"}}, "vfwcvt_rtz_x"), false);
      rm2(elementwise("vfwcvt_rtz_xu_f_v", wu, {{cn(f), "vs2"}}, "vfwcvt_rtz_xu"), false);
      rm2(elementwise("vfwcvt_f_f_v", *w, {{cn(f), "vs2"}}, "vfwcvt_f"), false);
      // Narrowing conversions named by the narrow float type f.
      rm2(elementwise("vfncvt_f_x_w", f, {{cn(wi), "vs2"}}, "vfncvt_f"), true);
      rm2(elementwise("vfncvt_f_xu_w", f, {{cn(wu), "vs2"}}, "vfncvt_f"), true);
      rm2(elementwise("vfncvt_f_f_w", f, {{cn(*w), "vs2"}}, "vfncvt_f"), true);
      rm2(elementwise("vfncvt_rod_f_f_w", f, {{cn(*w), "vs2"}}, "vfncvt_rod_f"), false);
    }
    // Integer <-> float at half width: f16 from i8, i8 from f16, ...
    if (auto n = rescale(f, -1, K::Int)) {
      auto nu = n->with_kind(K::Uint);
      rm2(elementwise("vfwcvt_f_x_v", f, {{cn(*n), "vs2"}}, "vfwcvt_f"), false);
      rm2(elementwise("vfwcvt_f_xu_v", f, {{cn(nu), "vs2"}}, "vfwcvt_f"), false);
      rm2(elementwise("vfncvt_x_f_w", *n, {{cn(f), "vs2"}}, "vfncvt_x"), true);
      rm2(elementwise("vfncvt_xu_f_w", nu, {{cn(f), "vs2"}}, "vfncvt_xu"), true);
      rm2(elementwise("vfncvt_rtz_x_f_w", *n, {{cn(f), "vs2"}}, "vfncvt_rtz_x"), false);
      rm2(elementwise("vfncvt_rtz_xu_f_w", nu, {{cn(f), "vs2"}}, "vfncvt_rtz_xu"), false);
    }
  }
}

void gen_reductions(Builder &b) {
  b.section("reductions");
  auto red = [&](const std::string &op, const VectorType &t, const VectorType &acc,
                 bool rm) {
    Fn f;
    f.ret = cn(acc);
    f.mnem = op + "_vs";
    f.toks = {t.token(), acc.token()};
    f.params = {{cn(t), "vs2"}, {cn(acc), "vs1"}, {"size_t", "vl"}};
    f.maskable = true;
    f.mask_ratio = static_cast<int>(t.ratio());
    f.pol = Pol::Reduction;
    f.ovl = Ovl::Both;
    f.ovl_name = op;
    add_rm_pair(b, f, rm, "frm");
  };
  for (const auto &t : types_of({K::Int, K::Uint})) {
    bool s = t.kind() == K::Int;
    auto m1 = VectorType::data(t.kind(), t.sew(), 0);
    for (const char *op : {"vredsum", "vredand", "vredor", "vredxor"}) red(op, t, m1, false);
    for (const char *op : {"vredmax", "vredmin"})
      red(std::string(op) + (s ? "" : "u"), t, m1, false);
    if (t.sew() <= 32)
      red(s ? "vwredsum" : "vwredsumu", t, VectorType::data(t.kind(), t.sew() * 2, 0), false);
  }
  for (const auto &t : types_of(K::Float)) {
    auto m1 = VectorType::data(K::Float, t.sew(), 0);
    red("vfredosum", t, m1, true);
    red("vfredusum", t, m1, true);
    red("vfredmax", t, m1, false);
    red("vfredmin", t, m1, false);
    if (t.sew() <= 32) {
      auto w1 = VectorType::data(K::Float, t.sew() * 2, 0);
      red("vfwredosum", t, w1, true);
      red("vfwredusum", t, w1, true);
    }
  }
}

void gen_mask(Builder &b) {
  b.section("mask operations");
  for (int r : kRatios) {
    std::string m = mask_c(r);
    std::string tok = mask_tok(r);
    for (const char *op : {"vmand", "vmnand", "vmandn", "vmxor", "vmor", "vmnor",
                           "vmorn", "vmxnor"}) {
      Fn f;
      f.ret = m;
      f.mnem = std::string(op) + "_mm";
      f.toks = {tok};
      f.params = {{m, "vs2"}, {m, "vs1"}, {"size_t", "vl"}};
      f.ovl = Ovl::Both;
      f.ovl_name = op;
      b.add(f);
    }
    for (const char *op : {"vmmv", "vmnot"}) {
      Fn f;
      f.ret = m;
      f.mnem = std::string(op) + "_m";
      f.toks = {tok};
      f.params = {{m, "vs"}, {"size_t", "vl"}};
      f.ovl = Ovl::Both;
      f.ovl_name = op;
      b.add(f);
    }
    for (const char *op : {"vmclr", "vmset"}) {
      Fn f;
      f.ret = m;
      f.mnem = std::string(op) + "_m";
      f.toks = {tok};
      f.params = {{"size_t", "vl"}};
      b.add(f);
    }
    for (const char *op : {"vcpop", "vfirst"}) {
      Fn f;
      f.ret = std::string(op) == "vcpop" ? "unsigned long" : "long";
      f.mnem = std::string(op) + "_m";
      f.toks = {tok};
      f.params = {{m, "vs2"}, {"size_t", "vl"}};
      f.maskable = true;
      f.mask_ratio = r;
      f.ovl = Ovl::Both;
      f.ovl_name = op;
      b.add(f);
    }
    for (const char *op : {"vmsbf", "vmsif", "vmsof"}) {
      Fn f;
      f.ret = m;
      f.mnem = std::string(op) + "_m";
      f.toks = {tok};
      f.params = {{m, "vs2"}, {"size_t", "vl"}};
      f.maskable = true;
      f.mask_ratio = r;
      f.pol = Pol::MaskOnly;
      f.ovl = Ovl::Both;
      f.ovl_name = op;
      b.add(f);
    }
  }
  for (const auto &t : types_of(K::Uint)) {
    int r = static_cast<int>(t.ratio());
    Fn io = elementwise("viota_m", t, {{mask_c(r), "vs2"}}, "viota");
    io.ovl = Ovl::PolicyOnly;
    b.add(io);
    Fn id = elementwise("vid_v", t, {}, "vid");
    id.ovl = Ovl::PolicyOnly;
    b.add(id);
  }
}

void gen_permutation(Builder &b) {
  b.section("permutation");
  for (const auto &t : types_of({K::Int, K::Uint, K::Float})) {
    bool fl = t.kind() == K::Float;
    Fn xs;
    xs.ret = sc(t);
    xs.mnem = fl ? "vfmv_f_s" : "vmv_x_s";
    xs.toks = {t.token(), t.scalar_token()};
    xs.params = {{cn(t), "vs1"}};
    xs.ovl = Ovl::Both;
    xs.ovl_name = fl ? "vfmv_f" : "vmv_x";
    b.add(xs);
    Fn sx = elementwise(fl ? "vfmv_s_f" : "vmv_s_x", t, {{sc(t), "rs1"}},
                        fl ? "vfmv_s" : "vmv_s");
    sx.maskable = false;
    sx.pol = Pol::TailOnly;
    sx.ovl = Ovl::PolicyOnly;
    b.add(sx);

    Fn up = elementwise("vslideup_vx", t,
                        {{cn(t), "vd"}, {cn(t), "vs2"}, {"size_t", "rs1"}}, "vslideup");
    up.has_vd = true;
    b.add(up);
    b.add(elementwise("vslidedown_vx", t, {{cn(t), "vs2"}, {"size_t", "rs1"}},
                      "vslidedown"));
    std::string s1 = fl ? "vfslide1" : "vslide1";
    std::string form = fl ? "_vf" : "_vx";
    b.add(elementwise(s1 + "up" + form, t, {{cn(t), "vs2"}, {sc(t), "rs1"}},
                      s1 + "up"));
    b.add(elementwise(s1 + "down" + form, t, {{cn(t), "vs2"}, {sc(t), "rs1"}},
                      s1 + "down"));

    b.add(elementwise("vrgather_vv", t, {{cn(t), "vs2"}, {cn(as_uint(t)), "vs1"}},
                      "vrgather"));
    b.add(elementwise("vrgather_vx", t, {{cn(t), "vs2"}, {"size_t", "vs1"}},
                      "vrgather"));
    if (auto idx = index_type(t, 16))
      b.add(elementwise("vrgatherei16_vv", t, {{cn(t), "vs2"}, {cn(*idx), "vs1"}},
                        "vrgatherei16"));
    Fn cp = elementwise("vcompress_vm", t,
                        {{cn(t), "vs2"}, {mask_c(static_cast<int>(t.ratio())), "vs1"}},
                        "vcompress");
    cp.maskable = false;
    cp.pol = Pol::TailOnly;
    b.add(cp);
  }
}

void gen_misc(Builder &b) {
  b.section("reinterpret, lmul, undefined, insert, extract and create");
  auto conv = [&](const std::string &mnem, const VectorType &src,
                  const std::string &src_tok, const std::string &src_c,
                  const std::string &dst_tok, const std::string &dst_c,
                  const std::string &pname, const std::string &ovl) {
    Fn f;
    f.ret = dst_c;
    f.mnem = mnem;
    f.toks = {src_tok, dst_tok};
    f.params = {{src_c, pname}};
    f.ovl = ovl.empty() ? Ovl::None : Ovl::Both;
    f.ovl_name = ovl;
    (void)src;
    b.add(f);
  };
  const auto all = types_of({K::Int, K::Uint, K::Float});
  for (const auto &s : all) {
    for (const auto &d : all) {
      if (s == d) continue;
      bool same_shape = s.sew() == d.sew() && s.lmul_log2() == d.lmul_log2();
      bool sew_change = s.kind() == d.kind() && s.kind() != K::Float &&
                        s.lmul_log2() == d.lmul_log2() && s.sew() != d.sew();
      bool float_int = same_shape && (s.kind() == K::Float) != (d.kind() == K::Float);
      bool int_uint = same_shape && s.kind() != K::Float && d.kind() != K::Float;
      if (sew_change || float_int || int_uint)
        conv("vreinterpret_v", s, s.token(), cn(s), d.token(), cn(d), "src",
             "vreinterpret_" + d.token());
    }
  }
  for (int r : kRatios) {
    for (const auto &t : types_of({K::Int, K::Uint})) {
      if (t.lmul_log2() != 0) continue;
      conv("vreinterpret_v", t, mask_tok(r), mask_c(r), t.token(), cn(t), "src",
           "vreinterpret_" + t.token());
      conv("vreinterpret_v", t, t.token(), cn(t), mask_tok(r), mask_c(r), "src",
           "vreinterpret_" + mask_tok(r));
    }
  }
  for (const auto &s : all) {
    for (int l = -3; l <= 3; ++l) {
      if (l == s.lmul_log2() || !is_legal_data_type(s.kind(), s.sew(), l)) continue;
      auto d = VectorType::data(s.kind(), s.sew(), l);
      std::string op = l > s.lmul_log2() ? "vlmul_ext" : "vlmul_trunc";
      conv(op + "_v", s, s.token(), cn(s), d.token(), cn(d), "value",
           op + "_" + d.token());
    }
  }
  for (const auto &t : all) {
    Fn u;
    u.ret = cn(t);
    u.mnem = "vundefined";
    u.toks = {t.token()};
    b.add(u);
  }
  // Non-tuple insert/extract/create over LMUL >= 1.
  for (const auto &small : all) {
    if (small.lmul_log2() < 0) continue;
    for (int l = small.lmul_log2() + 1; l <= 3; ++l) {
      auto big = VectorType::data(small.kind(), small.sew(), l);
      Fn set;
      set.ret = cn(big);
      set.mnem = "vset_v";
      set.toks = {small.token(), big.token()};
      set.params = {{cn(big), "dest"}, {"size_t", "index"}, {cn(small), "value"}};
      set.ovl = Ovl::Both;
      set.ovl_name = "vset";
      b.add(set);
      Fn get;
      get.ret = cn(small);
      get.mnem = "vget_v";
      get.toks = {big.token(), small.token()};
      get.params = {{cn(big), "src"}, {"size_t", "index"}};
      get.ovl = Ovl::Both;
      get.ovl_name = "vget_" + small.token();
      b.add(get);
      Fn cr;
      cr.ret = cn(big);
      cr.mnem = "vcreate_v";
      cr.toks = {small.token(), big.token()};
      for (int i = 0; i < (1 << (l - small.lmul_log2())); ++i)
        cr.params.push_back({cn(small), "v" + std::to_string(i)});
      b.add(cr);
    }
  }
  // Tuple forms.
  for (const auto &t : all) {
    int regs = t.lmul_log2() > 0 ? 1 << t.lmul_log2() : 1;
    for (int nf = 2; nf <= 8; ++nf) {
      if (nf * regs > 8) continue;
      auto tt = t.with_nfields(nf);
      Fn u;
      u.ret = cn(tt);
      u.mnem = "vundefined";
      u.toks = {tt.token()};
      b.add(u);
      Fn set;
      set.ret = cn(tt);
      set.mnem = "vset_v";
      set.toks = {t.token(), tt.token()};
      set.params = {{cn(tt), "dest"}, {"size_t", "index"}, {cn(t), "value"}};
      set.ovl = Ovl::Both;
      set.ovl_name = "vset";
      b.add(set);
      Fn get;
      get.ret = cn(t);
      get.mnem = "vget_v";
      get.toks = {tt.token(), t.token()};
      get.params = {{cn(tt), "src"}, {"size_t", "index"}};
      get.ovl = Ovl::Both;
      get.ovl_name = "vget_" + t.token();
      b.add(get);
      Fn cr;
      cr.ret = cn(tt);
      cr.mnem = "vcreate_v";
      cr.toks = {tt.token()};
      for (int i = 0; i < nf; ++i) cr.params.push_back({cn(t), "v" + std::to_string(i)});
      b.add(cr);
    }
  }
}

void gen_config(Builder &b) {
  b.section("configuration");
  for (int sew : {8, 16, 32, 64}) {
    for (int l = -3; l <= 3; ++l) {
      if (!is_legal_data_type(K::Int, sew, l)) continue;
      auto t = VectorType::data(K::Int, sew, l);
      Fn v;
      v.ret = "size_t";
      v.mnem = "vsetvl";
      v.toks = {};
      v.mnem += "_" + vsetvl_suffix(t);
      v.params = {{"size_t", "avl"}};
      b.add(v);
      Fn m;
      m.ret = "size_t";
      m.mnem = "vsetvlmax_" + vsetvl_suffix(t);
      b.add(m);
    }
  }
}

}  // namespace

const char *to_string(ListingKind k) {
  switch (k) {
    case ListingKind::Explicit: return "explicit";
    case ListingKind::ExplicitPolicy: return "explicit-policy";
    case ListingKind::Implicit: return "implicit";
    case ListingKind::ImplicitPolicy: return "implicit-policy";
  }
  return "?";
}

std::string generate_listing(ListingKind kind) {
  Builder b(kind);
  if (kind == ListingKind::Explicit) gen_config(b);
  gen_loads_stores(b);
  gen_segments(b);
  gen_integer(b);
  gen_fixed_point(b);
  gen_float(b);
  gen_conversions(b);
  gen_reductions(b);
  gen_mask(b);
  gen_permutation(b);
  gen_misc(b);
  return b.take();
}

std::string generate_explicit_listing() {
  return generate_listing(ListingKind::Explicit) +
         generate_listing(ListingKind::ExplicitPolicy);
}

}  // namespace rvfuzz
