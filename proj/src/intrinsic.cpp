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

#include "rvfuzz/intrinsic.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace rvfuzz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::optional<SemType> parse_scalar_name(std::string_view s) {
  SemType t;
  t.kind = SemType::Kind::Scalar;
  if (s == "_Float16") {
    t.elem_kind = ElemKind::Float;
    t.width = 16;
    return t;
  }
  if (s == "float") {
    t.elem_kind = ElemKind::Float;
    t.width = 32;
    return t;
  }
  if (s == "double") {
    t.elem_kind = ElemKind::Float;
    t.width = 64;
    return t;
  }
  std::string_view rest;
  if (s.starts_with("uint")) {
    t.elem_kind = ElemKind::Uint;
    rest = s.substr(4);
  } else if (s.starts_with("int")) {
    t.elem_kind = ElemKind::Int;
    rest = s.substr(3);
  } else {
    return std::nullopt;
  }
  if (!rest.ends_with("_t")) return std::nullopt;
  rest.remove_suffix(2);
  if (rest == "8") t.width = 8;
  else if (rest == "16") t.width = 16;
  else if (rest == "32") t.width = 32;
  else if (rest == "64") t.width = 64;
  else return std::nullopt;
  return t;
}

bool is_scalar_token(std::string_view tok) {
  if (tok.size() < 2) return false;
  if (tok[0] != 'i' && tok[0] != 'u' && tok[0] != 'f') return false;
  std::string_view w = tok.substr(1);
  if (w == "8") return tok[0] != 'f';
  return w == "16" || w == "32" || w == "64";
}

bool is_float8_token(std::string_view tok) {
  return tok.starts_with("f8") || tok.starts_with("float8");
}

bool is_type_token(std::string_view tok) {
  return VectorType::parse_token(tok).has_value() || is_scalar_token(tok);
}

const std::vector<std::string> &load_stems() {
  static const std::vector<std::string> s = {
      "vle", "vlse", "vluxei", "vloxei", "vlseg", "vlsseg",
      "vluxseg", "vloxseg", "vlm"};
  return s;
}

bool stem_matches(std::string_view mnemonic, std::string_view stem) {
  if (!mnemonic.starts_with(stem)) return false;
  if (mnemonic.size() == stem.size()) return true;
  char c = mnemonic[stem.size()];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '_';
}

bool is_fault_only_first(std::string_view mnemonic) {
  // vle8ff_v, vlseg2e8ff_v
  std::string_view head = mnemonic.substr(0, mnemonic.find('_'));
  return head.starts_with("vl") && head.ends_with("ff");
}

ParamRole infer_role(const Param &p, bool memory_op) {
  const SemType &t = p.type;
  if (t.is_vector()) {
    if (t.vtype.is_bool() && p.name == "vm") return ParamRole::Mask;
    if (memory_op && p.name == "rs2") return ParamRole::IndexVector;
    return ParamRole::VectorOperand;
  }
  if (p.name == "vl" && t.kind == SemType::Kind::SizeT)
    return ParamRole::VlCount;
  if (p.name == "vxrm") return ParamRole::RoundingModeVxrm;
  if (p.name == "frm") return ParamRole::RoundingModeFrm;
  if (t.kind == SemType::Kind::Pointer) return ParamRole::MemoryAddress;
  if (t.kind == SemType::Kind::SizeTPtr) return ParamRole::Other;
  return ParamRole::Scalar;
}

}  // namespace

std::string SemType::c_spelling() const {
  switch (kind) {
    case Kind::Void: return "void";
    case Kind::Vector: return vtype.c_name();
    case Kind::SizeT: return "size_t";
    case Kind::SizeTPtr: return "size_t *";
    case Kind::PtrdiffT: return "ptrdiff_t";
    case Kind::UnsignedInt: return "unsigned int";
    case Kind::Long: return "long";
    case Kind::UnsignedLong: return "unsigned long";
    case Kind::Scalar:
    case Kind::Pointer: {
      std::string base;
      if (elem_kind == ElemKind::Float)
        base = width == 16 ? "_Float16" : width == 32 ? "float" : "double";
      else
        base = std::string(elem_kind == ElemKind::Uint ? "uint" : "int") +
               std::to_string(width) + "_t";
      if (kind == Kind::Scalar) return base;
      return (is_const ? "const " : "") + base + " *";
    }
  }
  return "";
}

std::optional<SemType> SemType::parse(std::string_view spelling) {
  std::string s;
  // Normalize whitespace and detach '*'.
  for (char c : spelling) {
    if (c == '*') {
      s += " * ";
    } else {
      s += c;
    }
  }
  std::vector<std::string> words;
  {
    std::string cur;
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) words.push_back(cur), cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) words.push_back(cur);
  }
  bool is_const = false;
  int stars = 0;
  std::vector<std::string> base;
  for (auto &w : words) {
    if (w == "const") is_const = true;
    else if (w == "*") ++stars;
    else base.push_back(w);
  }
  if (base.empty() || stars > 1) return std::nullopt;
  std::string b = base[0];
  for (std::size_t i = 1; i < base.size(); ++i) b += " " + base[i];

  SemType t;
  if (stars == 1) {
    if (b == "size_t") {
      t.kind = Kind::SizeTPtr;
      return t;
    }
    auto sc = parse_scalar_name(b);
    if (!sc) return std::nullopt;
    t = *sc;
    t.kind = Kind::Pointer;
    t.is_const = is_const;
    return t;
  }
  if (b == "void") return SemType{};
  if (b == "size_t") {
    t.kind = Kind::SizeT;
    return t;
  }
  if (b == "ptrdiff_t") {
    t.kind = Kind::PtrdiffT;
    return t;
  }
  if (b == "unsigned int" || b == "unsigned") {
    t.kind = Kind::UnsignedInt;
    return t;
  }
  if (b == "long" || b == "int") {
    t.kind = Kind::Long;
    return t;
  }
  if (b == "unsigned long") {
    t.kind = Kind::UnsignedLong;
    return t;
  }
  if (auto sc = parse_scalar_name(b)) return sc;
  if (auto vt = VectorType::parse_c_name(b)) {
    t.kind = Kind::Vector;
    t.vtype = *vt;
    return t;
  }
  return std::nullopt;
}

const char *to_string(ParamRole r) {
  switch (r) {
    case ParamRole::VectorOperand: return "vector-operand";
    case ParamRole::Mask: return "mask";
    case ParamRole::Scalar: return "scalar";
    case ParamRole::RoundingModeVxrm: return "rounding-mode-vxrm";
    case ParamRole::RoundingModeFrm: return "rounding-mode-frm";
    case ParamRole::VlCount: return "vl-count";
    case ParamRole::MemoryAddress: return "memory-address";
    case ParamRole::IndexVector: return "index-vector";
    case ParamRole::Other: return "other";
  }
  return "?";
}

const char *to_string(Category c) {
  switch (c) {
    case Category::Load: return "Load";
    case Category::Store: return "Store";
    case Category::Ignored: return "Ignored";
    case Category::Operation: return "Operation";
  }
  return "?";
}

bool is_policy_suffix(std::string_view s) {
  return s == "m" || s == "tu" || s == "tum" || s == "tumu" || s == "mu";
}

std::vector<VectorType> IntrinsicDef::vector_types() const {
  std::vector<VectorType> out;
  if (return_type.is_vector()) out.push_back(return_type.vtype);
  for (const auto &p : params)
    if (p.type.is_vector()) out.push_back(p.type.vtype);
  return out;
}

bool IntrinsicDef::is_masked() const {
  return std::any_of(params.begin(), params.end(),
                     [](const Param &p) { return p.role == ParamRole::Mask; });
}

int IntrinsicDef::param_index(std::string_view name) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].name == name) return static_cast<int>(i);
  return -1;
}

std::string IntrinsicDef::prototype() const {
  std::string s = return_type.c_spelling() + " " + full_name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ", ";
    std::string ty = params[i].type.c_spelling();
    s += ty;
    if (!ty.ends_with("*")) s += " ";
    s += params[i].name;
  }
  return s + ");";
}

ParseError::ParseError(int line, const std::string &msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg),
      line_(line) {}

NameParts decode_name(std::string_view full_name) {
  static constexpr std::string_view kPrefix = "__riscv_";
  if (!full_name.starts_with(kPrefix))
    throw DecodeError("name lacks __riscv_ prefix: " + std::string(full_name));
  NameParts parts;
  parts.prefix = std::string(kPrefix);
  auto toks = split(full_name.substr(kPrefix.size()), '_');
  for (auto t : toks)
    if (t.empty()) throw DecodeError("empty name token in " +
                                     std::string(full_name));
  std::size_t end = toks.size();
  if (end > 1 && is_policy_suffix(toks[end - 1])) {
    parts.policy_suffix = std::string(toks[end - 1]);
    --end;
  }
  if (end > 1 && toks[end - 1] == "rm") {
    parts.rounding_mode = true;
    --end;
  }
  std::size_t type_begin = end;
  while (type_begin > 1 && is_type_token(toks[type_begin - 1])) --type_begin;
  for (std::size_t i = type_begin; i < end; ++i)
    parts.type_tokens.emplace_back(toks[i]);
  // Type tokens must be the contiguous tail; anything else is unknown.
  std::string mnemonic;
  for (std::size_t i = 0; i < type_begin; ++i) {
    if (is_float8_token(toks[i]))
      throw DecodeError("8-bit float type token '" + std::string(toks[i]) +
                        "' is not supported");
    if (i > 0 && (is_type_token(toks[i]) || toks[i] == "rm" ||
                  (is_policy_suffix(toks[i]) && toks[i] != "m")))
      throw DecodeError("unknown suffix token '" +
                        std::string(toks[type_begin - 1]) + "' in " +
                        std::string(full_name));
    if (i) mnemonic += '_';
    mnemonic += toks[i];
  }
  parts.mnemonic = std::move(mnemonic);
  return parts;
}

std::string render_name(const NameParts &parts) {
  std::string s = parts.prefix + parts.mnemonic;
  for (const auto &t : parts.type_tokens) s += "_" + t;
  if (parts.rounding_mode) s += "_rm";
  if (parts.policy_suffix) s += "_" + *parts.policy_suffix;
  return s;
}

Category classify(const IntrinsicDef &def, const ParseOptions &opts) {
  const std::string &mn = def.name_parts.mnemonic;
  if (stem_matches(mn, "vsetvl") || stem_matches(mn, "vsetvlmax"))
    return Category::Ignored;
  if (is_fault_only_first(mn)) return Category::Ignored;
  for (const auto &stem : opts.extra_ignored)
    if (stem_matches(mn, stem)) return Category::Ignored;
  for (const auto &stem : load_stems())
    if (stem_matches(mn, stem) && def.return_type.kind != SemType::Kind::Void)
      return Category::Load;
  if (def.return_type.kind == SemType::Kind::Void &&
      def.full_name.starts_with("__riscv_vs"))
    return Category::Store;
  return Category::Operation;
}

RatioAlignment is_ratio_aligned(const IntrinsicDef &def) {
  auto types = def.vector_types();
  if (types.empty())
    throw ModelError(def.full_name + " has no vector type");
  std::uint32_t r = types.front().ratio();
  for (const auto &t : types)
    if (t.ratio() != r) return {false, std::nullopt};
  return {true, r};
}

IntrinsicDef parse_prototype_line(std::string_view line, int line_no,
                                  const ParseOptions &opts) {
  std::string_view s = trim(line);
  if (s.ends_with(";")) s = trim(s.substr(0, s.size() - 1));
  std::size_t lp = s.find('(');
  std::size_t rp = s.rfind(')');
  if (lp == std::string_view::npos || rp == std::string_view::npos ||
      rp < lp || rp != s.size() - 1)
    throw ParseError(line_no, "malformed prototype");
  std::string_view head = trim(s.substr(0, lp));
  std::size_t name_start = head.find_last_of(" \t*");
  if (name_start == std::string_view::npos)
    throw ParseError(line_no, "missing return type");
  std::string_view name = head.substr(name_start + 1);
  std::string_view ret = trim(head.substr(0, name_start + 1));
  IntrinsicDef def;
  def.line = line_no;
  def.full_name = std::string(name);
  try {
    def.name_parts = decode_name(name);
  } catch (const DecodeError &e) {
    throw ParseError(line_no, e.what());
  }
  auto rt = SemType::parse(ret);
  if (!rt) throw ParseError(line_no, "unknown return type '" +
                                         std::string(ret) + "'");
  def.return_type = *rt;

  std::string_view plist = trim(s.substr(lp + 1, rp - lp - 1));
  if (!plist.empty() && plist != "void") {
    for (auto raw : split(plist, ',')) {
      std::string_view p = trim(raw);
      std::size_t ns = p.find_last_of(" \t*");
      if (ns == std::string_view::npos || ns + 1 >= p.size())
        throw ParseError(line_no, "parameter without name: '" +
                                      std::string(p) + "'");
      Param prm;
      prm.name = std::string(p.substr(ns + 1));
      std::string_view tys = p.substr(0, ns + 1);
      if (tys.find("float8") != std::string_view::npos)
        throw ParseError(line_no, "8-bit float types are not supported");
      auto ty = SemType::parse(tys);
      if (!ty) throw ParseError(line_no, "unknown parameter type '" +
                                             std::string(trim(tys)) + "'");
      prm.type = *ty;
      def.params.push_back(std::move(prm));
    }
  }
  def.category = classify(def, opts);
  bool memory_op = def.category == Category::Load ||
                   def.category == Category::Store ||
                   std::any_of(def.params.begin(), def.params.end(),
                               [](const Param &p) {
                                 return p.type.kind == SemType::Kind::Pointer;
                               });
  for (auto &p : def.params) p.role = infer_role(p, memory_op);
  return def;
}

std::vector<IntrinsicDef> parse_prototypes(std::string_view listing,
                                           const ParseOptions &opts) {
  std::vector<IntrinsicDef> out;
  int line_no = 0;
  for (auto raw : split(listing, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.starts_with("//") || line.starts_with("#"))
      continue;
    out.push_back(parse_prototype_line(line, line_no, opts));
  }
  if (out.empty()) throw ParseError(0, "listing contains no prototypes");
  return out;
}

std::vector<IntrinsicDef> parse_definitions(std::string_view listing,
                                            const ParseOptions &opts) {
  auto protos = parse_prototypes(listing, opts);
  std::vector<IntrinsicDef> out;
  std::unordered_map<std::string, std::size_t> index;
  out.reserve(protos.size());
  for (auto &d : protos) {
    auto it = index.find(d.full_name);
    if (it != index.end()) {
      ++out[it->second].alias_count;
      continue;
    }
    index.emplace(d.full_name, out.size());
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace rvfuzz
