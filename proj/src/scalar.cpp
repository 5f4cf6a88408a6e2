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

#include "rvfuzz/scalar.hpp"

#include <cstring>
#include <cstdio>

namespace rvfuzz {

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

bool is_nan_bits(std::uint64_t bits, int width) {
  switch (width) {
    case 16: return (bits & 0x7c00) == 0x7c00 && (bits & 0x03ff) != 0;
    case 32: return (bits & 0x7f800000u) == 0x7f800000u && (bits & 0x007fffffu) != 0;
    case 64:
      return (bits & 0x7ff0000000000000ull) == 0x7ff0000000000000ull &&
             (bits & 0x000fffffffffffffull) != 0;
  }
  return false;
}

std::int64_t ScalarValue::as_signed() const {
  std::uint64_t b = bits & width_mask(width);
  if (width < 64 && (b >> (width - 1)) & 1) b |= ~width_mask(width);
  return static_cast<std::int64_t>(b);
}

double ScalarValue::as_double() const {
  if (width == 64) {
    double d;
    std::memcpy(&d, &bits, sizeof d);
    return d;
  }
  if (width == 32) {
    std::uint32_t u = static_cast<std::uint32_t>(bits);
    float f;
    std::memcpy(&f, &u, sizeof f);
    return f;
  }
  // binary16
  std::uint32_t h = static_cast<std::uint32_t>(bits & 0xffff);
  int sign = (h >> 15) & 1, exp = (h >> 10) & 0x1f, man = h & 0x3ff;
  double v;
  if (exp == 0) v = man * 0x1p-24;
  else if (exp == 31) v = man ? __builtin_nan("") : __builtin_inf();
  else v = (1.0 + man / 1024.0) * __builtin_ldexp(1.0, exp - 15);
  return sign ? -v : v;
}

ScalarValue gen_scalar(ElemKind kind, int width, Rng &rng) {
  ScalarValue v;
  v.kind = kind;
  v.width = width;
  switch (kind) {
    case ElemKind::Bool:
      v.width = 1;
      v.bits = rng.below(2);
      return v;
    case ElemKind::Int:
    case ElemKind::Uint:
      if (!is_legal_sew(width)) throw ModelError("unsupported integer width");
      v.bits = rng.next() & width_mask(width);
      return v;
    case ElemKind::Float:
      if (width != 16 && width != 32 && width != 64)
        throw ModelError("unsupported float width " + std::to_string(width));
      v.bits = rng.next() & width_mask(width);
      if (is_nan_bits(v.bits, width)) v.bits = 0;
      return v;
  }
  return v;
}

std::string c_literal(const ScalarValue &v) {
  char buf[64];
  switch (v.kind) {
    case ElemKind::Bool: return v.bits ? "1" : "0";
    case ElemKind::Int: {
      std::int64_t s = v.as_signed();
      if (v.width == 64 && s == INT64_MIN) return "INT64_MIN";
      std::snprintf(buf, sizeof buf, "(int%d_t)%lld%s", v.width,
                    static_cast<long long>(s), v.width == 64 ? "LL" : "");
      return buf;
    }
    case ElemKind::Uint:
      std::snprintf(buf, sizeof buf, "(uint%d_t)%lluu%s", v.width,
                    static_cast<unsigned long long>(v.bits), v.width == 64 ? "LL" : "");
      return buf;
    case ElemKind::Float:
      std::snprintf(buf, sizeof buf, "f%d_bits(0x%llxu%s)", v.width,
                    static_cast<unsigned long long>(v.bits), v.width == 64 ? "LL" : "");
      return buf;
  }
  return "0";
}

}  // namespace rvfuzz
