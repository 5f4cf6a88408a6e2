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

#include "rvfuzz/rng.hpp"
#include "rvfuzz/types.hpp"

namespace rvfuzz {

struct ScalarValue {
  ElemKind kind = ElemKind::Int;
  int width = 8;
  std::uint64_t bits = 0;  // low `width` bits significant

  std::int64_t as_signed() const;
  double as_double() const;  // float kinds only
  friend bool operator==(const ScalarValue &, const ScalarValue &) = default;
};

bool is_nan_bits(std::uint64_t bits, int width);
std::uint64_t width_mask(int width);

// Throws ModelError for unsupported (kind, width) pairs such as 8-bit float.
ScalarValue gen_scalar(ElemKind kind, int width, Rng &rng);

// C expression for the value: "(int8_t)-5", "(uint32_t)7u", "f32_bits(0x3f800000u)".
std::string c_literal(const ScalarValue &v);

}  // namespace rvfuzz
