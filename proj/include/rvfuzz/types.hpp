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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rvfuzz {

enum class ElemKind : std::uint8_t { Bool, Int, Uint, Float };

const char *to_string(ElemKind k);

// Exact LMUL as a power of two: lmul = 2^lmul_log2, lmul_log2 in [-3, 3].
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational &, const Rational &) = default;
};

class VectorType {
 public:
  VectorType() = default;

  // Data vector (int/uint/float). nfields > 1 makes it a segment tuple.
  static VectorType data(ElemKind kind, int sew, int lmul_log2, int nfields = 1);
  static VectorType mask(int ratio);

  ElemKind kind() const { return kind_; }
  bool is_bool() const { return kind_ == ElemKind::Bool; }
  bool is_tuple() const { return nfields_ > 1; }
  int sew() const { return sew_; }
  int lmul_log2() const { return lmul_log2_; }
  Rational lmul() const;
  int nfields() const { return nfields_; }
  // SEW/LMUL; for bool types the stored ratio.
  std::uint32_t ratio() const;

  // Same element kind/sew/lmul with a single field.
  VectorType field_type() const;
  VectorType with_kind(ElemKind k) const;
  VectorType with_nfields(int nf) const;

  // "i8mf8", "u16m2x3", "f32m1", "b8".
  std::string token() const;
  // "vint8mf8_t", "vbool8_t", "vfloat32m1x2_t".
  std::string c_name() const;
  // "int8_t", "_Float16", ...; bool types have no scalar element.
  std::string elem_c_type() const;
  // "i8", "u16", "f32".
  std::string scalar_token() const;

  static std::optional<VectorType> parse_token(std::string_view tok);
  static std::optional<VectorType> parse_c_name(std::string_view name);

  friend bool operator==(const VectorType &, const VectorType &) = default;
  friend auto operator<=>(const VectorType &a, const VectorType &b) {
    return a.token() <=> b.token();
  }

 private:
  ElemKind kind_ = ElemKind::Int;
  std::uint8_t sew_ = 8;
  std::int8_t lmul_log2_ = 0;
  std::uint8_t nfields_ = 1;
  std::uint8_t bool_ratio_ = 0;
};

bool is_legal_sew(int sew);
bool is_legal_lmul_log2(int l);
// Legal data type under ELEN: ratio in [1, 64] and ratio >= sew/elen bound.
bool is_legal_data_type(ElemKind kind, int sew, int lmul_log2, int elen = 64);

struct MachineParams {
  std::uint32_t vlen = 128;
  std::uint32_t elen = 64;
  void validate() const;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// VLEN * LMUL / SEW; throws ModelError when below one element.
std::uint64_t vlmax(const VectorType &t, const MachineParams &m);
std::uint64_t vsetvl_model(std::uint64_t avl, const VectorType &t,
                           const MachineParams &m);
std::uint32_t ratio_of(const VectorType &t);

// Type used for the vsetvl of a ratio: e8 with LMUL = 8/ratio when the
// ratio's own type is bool.
std::string vsetvl_suffix(const VectorType &t);

}  // namespace rvfuzz
