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

#include "rvfuzz/types.hpp"

#include <charconv>

namespace rvfuzz {

namespace {

const char *lmul_token(int l) {
  switch (l) {
    case -3: return "mf8";
    case -2: return "mf4";
    case -1: return "mf2";
    case 0: return "m1";
    case 1: return "m2";
    case 2: return "m4";
    case 3: return "m8";
  }
  return "?";
}

int log2_exact(std::uint32_t v) {
  if (v == 0 || (v & (v - 1)) != 0) return -1;
  int r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

bool parse_uint(std::string_view s, int &out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

// Parses "mf8".."m8" at the start of s; returns consumed length or 0.
std::size_t parse_lmul(std::string_view s, int &lmul_log2) {
  if (s.size() >= 3 && s[0] == 'm' && s[1] == 'f') {
    switch (s[2]) {
      case '2': lmul_log2 = -1; return 3;
      case '4': lmul_log2 = -2; return 3;
      case '8': lmul_log2 = -3; return 3;
    }
    return 0;
  }
  if (s.size() >= 2 && s[0] == 'm') {
    switch (s[1]) {
      case '1': lmul_log2 = 0; return 2;
      case '2': lmul_log2 = 1; return 2;
      case '4': lmul_log2 = 2; return 2;
      case '8': lmul_log2 = 3; return 2;
    }
  }
  return 0;
}

}  // namespace

const char *to_string(ElemKind k) {
  switch (k) {
    case ElemKind::Bool: return "bool";
    case ElemKind::Int: return "int";
    case ElemKind::Uint: return "uint";
    case ElemKind::Float: return "float";
  }
  return "?";
}

bool is_legal_sew(int sew) {
  return sew == 8 || sew == 16 || sew == 32 || sew == 64;
}

bool is_legal_lmul_log2(int l) { return l >= -3 && l <= 3; }

bool is_legal_data_type(ElemKind kind, int sew, int lmul_log2, int elen) {
  if (kind == ElemKind::Bool || !is_legal_sew(sew) ||
      !is_legal_lmul_log2(lmul_log2) || sew > elen)
    return false;
  if (kind == ElemKind::Float && sew == 8) return false;
  // Fractional LMUL must leave room for one SEW element per ELEN slice:
  // LMUL >= SEW / ELEN.
  if (lmul_log2 < 0 && (sew << (-lmul_log2)) > elen) return false;
  return true;
}

VectorType VectorType::data(ElemKind kind, int sew, int lmul_log2,
                            int nfields) {
  if (!is_legal_data_type(kind, sew, lmul_log2))
    throw ModelError("illegal vector type");
  if (nfields < 1 || nfields > 8) throw ModelError("illegal field count");
  VectorType t;
  t.kind_ = kind;
  t.sew_ = static_cast<std::uint8_t>(sew);
  t.lmul_log2_ = static_cast<std::int8_t>(lmul_log2);
  t.nfields_ = static_cast<std::uint8_t>(nfields);
  return t;
}

VectorType VectorType::mask(int ratio) {
  if (log2_exact(static_cast<std::uint32_t>(ratio)) < 0 || ratio > 64)
    throw ModelError("illegal bool ratio");
  VectorType t;
  t.kind_ = ElemKind::Bool;
  t.sew_ = 0;
  t.lmul_log2_ = 0;
  t.bool_ratio_ = static_cast<std::uint8_t>(ratio);
  return t;
}

Rational VectorType::lmul() const {
  if (is_bool()) return {0, 1};
  if (lmul_log2_ >= 0) return {std::int64_t{1} << lmul_log2_, 1};
  return {1, std::int64_t{1} << -lmul_log2_};
}

std::uint32_t VectorType::ratio() const {
  if (is_bool()) return bool_ratio_;
  return lmul_log2_ >= 0 ? sew_ >> lmul_log2_ : sew_ << -lmul_log2_;
}

VectorType VectorType::field_type() const { return with_nfields(1); }

VectorType VectorType::with_kind(ElemKind k) const {
  VectorType t = *this;
  t.kind_ = k;
  return t;
}

VectorType VectorType::with_nfields(int nf) const {
  VectorType t = *this;
  t.nfields_ = static_cast<std::uint8_t>(nf);
  return t;
}

std::string VectorType::scalar_token() const {
  if (is_bool()) return "";
  char k = kind_ == ElemKind::Int ? 'i' : kind_ == ElemKind::Uint ? 'u' : 'f';
  return std::string(1, k) + std::to_string(sew_);
}

std::string VectorType::token() const {
  if (is_bool()) return "b" + std::to_string(bool_ratio_);
  std::string s = scalar_token() + lmul_token(lmul_log2_);
  if (nfields_ > 1) s += "x" + std::to_string(nfields_);
  return s;
}

std::string VectorType::c_name() const {
  if (is_bool()) return "vbool" + std::to_string(bool_ratio_) + "_t";
  const char *k = kind_ == ElemKind::Int    ? "int"
                  : kind_ == ElemKind::Uint ? "uint"
                                            : "float";
  std::string s = std::string("v") + k + std::to_string(sew_) +
                  lmul_token(lmul_log2_);
  if (nfields_ > 1) s += "x" + std::to_string(nfields_);
  return s + "_t";
}

std::string VectorType::elem_c_type() const {
  switch (kind_) {
    case ElemKind::Bool: return "";
    case ElemKind::Int: return "int" + std::to_string(sew_) + "_t";
    case ElemKind::Uint: return "uint" + std::to_string(sew_) + "_t";
    case ElemKind::Float:
      return sew_ == 16 ? "_Float16" : sew_ == 32 ? "float" : "double";
  }
  return "";
}

std::optional<VectorType> VectorType::parse_token(std::string_view tok) {
  if (tok.size() < 2) return std::nullopt;
  if (tok[0] == 'b') {
    int r = 0;
    if (!parse_uint(tok.substr(1), r) || r > 64 ||
        log2_exact(static_cast<std::uint32_t>(r)) < 0)
      return std::nullopt;
    return mask(r);
  }
  ElemKind kind;
  switch (tok[0]) {
    case 'i': kind = ElemKind::Int; break;
    case 'u': kind = ElemKind::Uint; break;
    case 'f': kind = ElemKind::Float; break;
    default: return std::nullopt;
  }
  std::size_t m = tok.find('m', 1);
  if (m == std::string_view::npos) return std::nullopt;
  int sew = 0;
  if (!parse_uint(tok.substr(1, m - 1), sew)) return std::nullopt;
  int l = 0;
  std::size_t used = parse_lmul(tok.substr(m), l);
  if (used == 0) return std::nullopt;
  std::string_view rest = tok.substr(m + used);
  int nf = 1;
  if (!rest.empty()) {
    if (rest[0] != 'x' || !parse_uint(rest.substr(1), nf) || nf < 2 || nf > 8)
      return std::nullopt;
  }
  if (!is_legal_data_type(kind, sew, l)) return std::nullopt;
  return data(kind, sew, l, nf);
}

std::optional<VectorType> VectorType::parse_c_name(std::string_view name) {
  if (name.size() < 4 || name[0] != 'v' || !name.ends_with("_t"))
    return std::nullopt;
  std::string_view body = name.substr(1, name.size() - 3);
  if (body.starts_with("bool")) {
    return parse_token("b" + std::string(body.substr(4)));
  }
  char k;
  if (body.starts_with("int")) {
    k = 'i';
    body.remove_prefix(3);
  } else if (body.starts_with("uint")) {
    k = 'u';
    body.remove_prefix(4);
  } else if (body.starts_with("float")) {
    k = 'f';
    body.remove_prefix(5);
  } else {
    return std::nullopt;
  }
  return parse_token(std::string(1, k) + std::string(body));
}

void MachineParams::validate() const {
  if (vlen < 64 || log2_exact(vlen) < 0)
    throw ModelError("vlen must be a power of two >= 64");
  if (elen > vlen || (elen != 32 && elen != 64))
    throw ModelError("elen must be 32 or 64 and <= vlen");
}

std::uint32_t ratio_of(const VectorType &t) { return t.ratio(); }

std::uint64_t vlmax(const VectorType &t, const MachineParams &m) {
  std::uint64_t v = m.vlen / t.ratio();
  if (v < 1) throw ModelError("vlmax < 1 for " + t.token());
  return v;
}

std::uint64_t vsetvl_model(std::uint64_t avl, const VectorType &t,
                           const MachineParams &m) {
  std::uint64_t v = vlmax(t, m);
  return avl < v ? avl : v;
}

std::string vsetvl_suffix(const VectorType &t) {
  if (t.is_bool()) {
    int l = 3 - log2_exact(t.ratio());
    return std::string("e8") + lmul_token(l);
  }
  return "e" + std::to_string(t.sew()) + lmul_token(t.lmul_log2());
}

}  // namespace rvfuzz
