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

#include "rvfuzz/program.hpp"

#include <cinttypes>
#include <cstdio>
#include <set>
#include <sstream>

namespace rvfuzz {

const char *to_string(ArrayRole r) {
  switch (r) {
    case ArrayRole::LoadSource: return "load-source";
    case ArrayRole::StoreDestination: return "store-destination";
    case ArrayRole::MaskSource: return "mask-source";
    case ArrayRole::IndexSource: return "index-source";
  }
  return "?";
}

std::string ArrayDecl::c_elem_type() const {
  switch (kind) {
    case ElemKind::Float:
      return width == 16 ? "_Float16" : width == 32 ? "float" : "double";
    case ElemKind::Int: return "int" + std::to_string(width) + "_t";
    case ElemKind::Bool:
    case ElemKind::Uint: return "uint" + std::to_string(width) + "_t";
  }
  return "uint8_t";
}

namespace {

std::string bits_type(int width) { return "uint" + std::to_string(width) + "_t"; }

// Initializer element as it appears inside a brace list.
std::string init_literal(const ArrayDecl &a, std::uint64_t bits) {
  char buf[48];
  const auto u = static_cast<unsigned long long>(bits & width_mask(a.width));
  if (a.kind == ElemKind::Float) {
    std::snprintf(buf, sizeof buf, "0x%llx%s", u, a.width == 64 ? "ull" : "u");
    return buf;
  }
  if (a.kind == ElemKind::Int) {
    ScalarValue v{ElemKind::Int, a.width, bits};
    long long s = v.as_signed();
    if (a.width == 64 && s == INT64_MIN) return "INT64_MIN";
    std::snprintf(buf, sizeof buf, "%lld%s", s, a.width == 64 ? "ll" : "");
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%llu%s", u, a.width == 64 ? "ull" : "u");
  return buf;
}

void collect_float_widths(const Expr &e, std::set<int> &out) {
  if (e.kind == Expr::Kind::Scalar && e.scalar.kind == ElemKind::Float)
    out.insert(e.scalar.width);
  for (const auto &a : e.args) collect_float_widths(a, out);
}

const char *print_format(const ArrayDecl &a) {
  if (a.kind == ElemKind::Int) return "%lld";
  return "%llu";
}

}  // namespace

std::string render_expr(const Expr &e, const ProgramIR &ir) {
  switch (e.kind) {
    case Expr::Kind::Call: {
      std::string s = e.def->full_name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += ", ";
        s += render_expr(e.args[i], ir);
      }
      return s + ")";
    }
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Ptr: return ir.arrays.at(e.array).ptr_name();
    case Expr::Kind::Vl: return "vl";
    case Expr::Kind::VlFor: return "__riscv_vsetvl_" + vsetvl_suffix(e.vtype) + "(vl)";
    case Expr::Kind::Int:
      return "(" + e.c_type + ")" + std::to_string(e.value);
    case Expr::Kind::Scalar: return c_literal(e.scalar);
    case Expr::Kind::Enum: return e.name;
    case Expr::Kind::VlMod: return "((size_t)" + std::to_string(e.value) + "u % vl)";
    case Expr::Kind::VlModPlus1:
      return "((size_t)" + std::to_string(e.value) + "u % (vl + 1))";
    case Expr::Kind::VlMinus1: return "(" + e.c_type + ")(vl - 1)";
  }
  return "";
}

std::string format_print_line(const ArrayDecl &a, std::size_t index, std::uint64_t bits) {
  char buf[96];
  bits &= width_mask(a.width);
  if (a.kind == ElemKind::Float) {
    if (is_nan_bits(bits, a.width)) {
      std::snprintf(buf, sizeof buf, "%s[%zu]=nan", a.name.c_str(), index);
    } else {
      std::snprintf(buf, sizeof buf, "%s[%zu]=0x%0*llx", a.name.c_str(), index,
                    a.width / 4, static_cast<unsigned long long>(bits));
    }
    return buf;
  }
  if (a.kind == ElemKind::Int) {
    ScalarValue v{ElemKind::Int, a.width, bits};
    std::snprintf(buf, sizeof buf, "%s[%zu]=%lld", a.name.c_str(), index,
                  static_cast<long long>(v.as_signed()));
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%s[%zu]=%llu", a.name.c_str(), index,
                static_cast<unsigned long long>(bits));
  return buf;
}

std::string render_c(const ProgramIR &ir, const std::string &header_comment) {
  std::ostringstream o;
  std::istringstream hc(header_comment);
  for (std::string line; std::getline(hc, line);) o << "// " << line << "\n";
  o << "#include <riscv_vector.h>\n"
       "#include <stddef.h>\n"
       "#include <stdint.h>\n"
       "#include <stdio.h>\n\n";

  std::set<int> scalar_fw, array_fw;
  for (const auto &s : ir.body) collect_float_widths(s.expr, scalar_fw);
  for (const auto &a : ir.arrays)
    if (a.kind == ElemKind::Float && a.role == ArrayRole::StoreDestination)
      array_fw.insert(a.width);
  static const char *kFloatType[] = {"_Float16", "float", "double"};
  for (int w : scalar_fw) {
    const char *ft = kFloatType[w == 16 ? 0 : w == 32 ? 1 : 2];
    o << "static inline " << ft << " f" << w << "_bits(" << bits_type(w)
      << " b) {\n  union { " << bits_type(w) << " u; " << ft
      << " f; } x = { b };\n  return x.f;\n}\n";
  }
  for (int w : array_fw) {
    o << "static void print_f" << w << "(const char *name, size_t i, " << bits_type(w)
      << " b) {\n";
    switch (w) {
      case 16:
        o << "  if ((b & 0x7c00u) == 0x7c00u && (b & 0x03ffu))\n"
             "    printf(\"%s[%zu]=nan\\n\", name, i);\n"
             "  else\n    printf(\"%s[%zu]=0x%04x\\n\", name, i, (unsigned)b);\n";
        break;
      case 32:
        o << "  if ((b & 0x7f800000u) == 0x7f800000u && (b & 0x007fffffu))\n"
             "    printf(\"%s[%zu]=nan\\n\", name, i);\n"
             "  else\n    printf(\"%s[%zu]=0x%08x\\n\", name, i, (unsigned)b);\n";
        break;
      default:
        o << "  if ((b & 0x7ff0000000000000ull) == 0x7ff0000000000000ull &&\n"
             "      (b & 0x000fffffffffffffull))\n"
             "    printf(\"%s[%zu]=nan\\n\", name, i);\n"
             "  else\n    printf(\"%s[%zu]=0x%016llx\\n\", name, i, "
             "(unsigned long long)b);\n";
    }
    o << "}\n";
  }
  if (!scalar_fw.empty() || !array_fw.empty()) o << "\n";

  for (const auto &a : ir.arrays) {
    const std::size_t n = a.length;
    if (a.kind == ElemKind::Float) {
      o << "static union { " << bits_type(a.width) << " bits[" << n << "]; "
        << a.c_elem_type() << " val[" << n << "]; } " << a.name;
    } else {
      o << "static " << a.c_elem_type() << " " << a.name << "[" << n << "]";
    }
    if (!a.init.empty()) {
      o << " = " << (a.kind == ElemKind::Float ? "{{" : "{");
      for (std::size_t i = 0; i < a.init.size(); ++i) {
        o << (i ? ", " : "") << init_literal(a, a.init[i]);
      }
      o << (a.kind == ElemKind::Float ? "}}" : "}");
    }
    o << ";\n";
  }

  o << "\nint main(void) {\n";
  for (const auto &a : ir.arrays) {
    bool ro = a.role != ArrayRole::StoreDestination;
    o << "  " << (ro ? "const " : "") << a.c_elem_type() << " *" << a.ptr_name() << " = "
      << a.name << (a.kind == ElemKind::Float ? ".val" : "") << ";\n";
  }
  const std::string suffix = vsetvl_suffix(ir.ratio_type);
  o << "  size_t avl = " << ir.data_len << ";\n"
    << "  for (size_t vl; avl > 0; avl -= vl) {\n"
    << "    vl = __riscv_vsetvl_" << suffix << "(avl);\n";
  for (const auto &s : ir.body) {
    o << "    ";
    if (!s.decl_type.empty()) o << s.decl_type << " " << s.decl_name << " = ";
    else if (s.discard) o << "(void)";
    o << render_expr(s.expr, ir) << ";\n";
    if (s.silence) o << "    (void)" << s.decl_name << ";\n";
  }
  for (const auto &a : ir.arrays) {
    o << "    " << a.ptr_name() << " += ";
    if (a.advance != 1) o << a.advance << " * ";
    o << "vl;\n";
  }
  o << "  }\n";

  if (ir.manifest.empty()) {
    o << "  printf(\"" << kNoDefinedElements << "\\n\");\n";
  }
  // Group runs of the same array into arithmetic-progression loops.
  std::size_t k = 0;
  while (k < ir.manifest.size()) {
    const auto &first = ir.manifest[k];
    std::size_t stride = 0, len = 1;
    if (k + 1 < ir.manifest.size() && ir.manifest[k + 1].array == first.array) {
      stride = ir.manifest[k + 1].index - first.index;
      len = 2;
      while (k + len < ir.manifest.size() &&
             ir.manifest[k + len].array == first.array &&
             ir.manifest[k + len].index - ir.manifest[k + len - 1].index == stride)
        ++len;
      if (len < 3) len = 1;
    }
    const ArrayDecl &a = ir.arrays.at(first.array);
    std::string loop, idx;
    if (len == 1) {
      idx = "(size_t)" + std::to_string(first.index);
    } else {
      std::size_t last = first.index + stride * (len - 1);
      loop = "for (size_t i = " + std::to_string(first.index) + "; i <= " +
             std::to_string(last) + "; i += " + std::to_string(stride) + ") ";
      idx = "i";
    }
    o << "  " << loop;
    if (a.kind == ElemKind::Float) {
      o << "print_f" << a.width << "(\"" << a.name << "\", " << idx << ", " << a.name
        << ".bits[" << idx << "]);\n";
    } else {
      o << "printf(\"" << a.name << "[%zu]=" << print_format(a) << "\\n\", " << idx << ", ("
        << (a.kind == ElemKind::Int ? "long long" : "unsigned long long") << ")" << a.name
        << "[" << idx << "]);\n";
    }
    k += len;
  }
  o << "  return 0;\n}\n";
  return o.str();
}

}  // namespace rvfuzz
