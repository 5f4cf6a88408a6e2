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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rvfuzz/intrinsic.hpp"
#include "rvfuzz/scalar.hpp"
#include "rvfuzz/scheduling.hpp"

namespace rvfuzz {

// Expression tree shared by the C emitter and the reference evaluator.
struct Expr {
  enum class Kind {
    Call,      // def(args...)
    Var,       // vector variable
    Ptr,       // current pointer of array `array`
    Vl,        // the loop's vl
    VlFor,     // vsetvl of `vtype` applied to vl (off-ratio accesses)
    Int,       // integer constant of C type `c_type`
    Scalar,    // literal ScalarValue
    Enum,      // rounding-mode macro; `value` is its numeric encoding
    VlMod,     // (size_t)value % vl
    VlModPlus1,  // (size_t)value % (vl + 1)
    VlMinus1,  // vl - 1, as `c_type`
  };
  Kind kind = Kind::Int;
  const IntrinsicDef *def = nullptr;
  std::vector<Expr> args;
  std::string name;     // Var name, Enum macro text
  int array = -1;       // Ptr
  VectorType vtype;     // VlFor
  std::uint64_t value = 0;
  std::string c_type;   // Int / VlMinus1
  ScalarValue scalar;   // Scalar
};

struct Stmt {
  ScheduleItem::Kind kind = ScheduleItem::Kind::Op;
  int owner = 0;
  int intra = 0;
  std::string decl_type;  // empty when the value is discarded or void
  std::string decl_name;
  Expr expr;
  bool discard = false;   // "(void)expr;"
  bool silence = false;   // emit "(void)decl_name;" after the declaration
};

enum class ArrayRole { LoadSource, StoreDestination, MaskSource, IndexSource };
const char *to_string(ArrayRole r);

struct ArrayDecl {
  std::string name;
  ArrayRole role = ArrayRole::LoadSource;
  ElemKind kind = ElemKind::Int;  // element kind; masks are uint8 bytes
  int width = 8;
  std::size_t length = 0;
  std::size_t advance = 1;  // elements the pointer moves per vl
  std::vector<std::uint64_t> init;  // bit patterns; empty = zero-initialized
  std::string c_elem_type() const;
  std::string ptr_name() const { return "p_" + name; }
};

struct PrintEntry {
  int array = 0;
  std::size_t index = 0;
};

struct ProgramIR {
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::AllIn;
  VectorType ratio_type;
  std::size_t data_len = 0;
  std::vector<ArrayDecl> arrays;
  std::vector<Stmt> body;          // scheduled order
  std::vector<PrintEntry> manifest;  // arrays in order, ascending index
};

// Full C source for the program.
std::string render_c(const ProgramIR &ir, const std::string &header_comment);
std::string render_expr(const Expr &e, const ProgramIR &ir);

// The exact text the program prints for given final array contents.
std::string format_print_line(const ArrayDecl &a, std::size_t index, std::uint64_t bits);
inline constexpr const char *kNoDefinedElements = "no defined elements";

}  // namespace rvfuzz
