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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rvfuzz/types.hpp"

namespace rvfuzz {

// C types appearing in intrinsic signatures.
struct SemType {
  enum class Kind : std::uint8_t {
    Void,
    Vector,
    Scalar,     // int8_t .. double; elem_kind/width describe it
    Pointer,    // pointer to a scalar element; is_const for loads
    SizeT,      // size_t (vl, offsets, indices)
    SizeTPtr,   // size_t * (new_vl of fault-only-first loads)
    PtrdiffT,   // byte strides
    UnsignedInt,  // vxrm / frm
    Long,
    UnsignedLong,
  };
  Kind kind = Kind::Void;
  VectorType vtype;  // Kind::Vector
  ElemKind elem_kind = ElemKind::Int;  // Scalar / Pointer
  int width = 0;
  bool is_const = false;

  bool is_vector() const { return kind == Kind::Vector; }
  std::string c_spelling() const;
  static std::optional<SemType> parse(std::string_view spelling);
  friend bool operator==(const SemType &, const SemType &) = default;
};

enum class ParamRole : std::uint8_t {
  VectorOperand,
  Mask,
  Scalar,
  RoundingModeVxrm,
  RoundingModeFrm,
  VlCount,
  MemoryAddress,
  IndexVector,
  Other,
};
const char *to_string(ParamRole r);

enum class Category : std::uint8_t { Load, Store, Ignored, Operation };
const char *to_string(Category c);

struct NameParts {
  std::string prefix;
  std::string mnemonic;
  std::vector<std::string> type_tokens;
  bool rounding_mode = false;  // explicit frm/vxrm "_rm" form
  std::optional<std::string> policy_suffix;
  friend bool operator==(const NameParts &, const NameParts &) = default;
};

struct Param {
  std::string name;
  SemType type;
  ParamRole role = ParamRole::Other;
};

struct IntrinsicDef {
  std::string full_name;
  NameParts name_parts;
  SemType return_type;
  std::vector<Param> params;
  Category category = Category::Operation;
  std::uint32_t alias_count = 1;
  int line = 0;

  // Every vector type in return and params, in signature order.
  std::vector<VectorType> vector_types() const;
  bool is_masked() const;   // has a vm parameter
  std::string policy() const { return name_parts.policy_suffix.value_or(""); }
  int param_index(std::string_view name) const;
  std::string prototype() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string &msg);
  int line() const { return line_; }

 private:
  int line_;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOptions {
  // Mnemonic stems routed to Ignored in addition to vsetvl/vsetvlmax and
  // fault-only-first loads.
  std::vector<std::string> extra_ignored;
};

// One entry per prototype line; use merge_overloads for name-keyed records.
std::vector<IntrinsicDef> parse_prototypes(std::string_view listing,
                                           const ParseOptions &opts = {});
// Name-keyed definitions with alias_count merged; first prototype wins.
std::vector<IntrinsicDef> parse_definitions(std::string_view listing,
                                            const ParseOptions &opts = {});
IntrinsicDef parse_prototype_line(std::string_view line, int line_no = 0,
                                  const ParseOptions &opts = {});

NameParts decode_name(std::string_view full_name);
std::string render_name(const NameParts &parts);

Category classify(const IntrinsicDef &def, const ParseOptions &opts = {});

struct RatioAlignment {
  bool aligned = false;
  std::optional<std::uint32_t> common_ratio;
};
// Throws ModelError when def has no vector type.
RatioAlignment is_ratio_aligned(const IntrinsicDef &def);

bool is_policy_suffix(std::string_view s);

}  // namespace rvfuzz
