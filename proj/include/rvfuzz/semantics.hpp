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

#include <string>

#include "rvfuzz/intrinsic.hpp"

namespace rvfuzz {

// Functional families used by the coverage breakdown.
enum class Family : std::uint8_t {
  LoadStore,
  SegmentLoadStore,
  Arithmetic,
  Mask,
  Reduction,
  Permutation,
  Conversion,
  Misc,
};
inline constexpr int kFamilyCount = 8;
const char *to_string(Family f);

// How result elements depend on source elements, for the agnostic analysis.
enum class LaneClass : std::uint8_t {
  Elementwise,      // result[p] depends on sources at p
  CrossLane,        // result[p] may depend on any source position
  Reduction,        // result in element 0 only
  ScalarResult,     // no vector result
  ElementZero,      // vmv.s.x style: writes element 0
  TupleInsert,      // vset on a tuple
  TupleExtract,     // vget from a tuple
  TupleCreate,      // vcreate of a tuple
  Reshape,          // LMUL-changing vset/vget/vcreate
  AlwaysUndefined,  // vundefined, vlmul_ext/trunc, vreinterpret
  Memory,
  Config,
};

// Operand value constraints that keep conditionally undefined intrinsics
// well defined.
enum class UbRule : std::uint8_t {
  None,
  GatherIndex,        // vrgather(ei16).vv: index vector from vid
  GatherScalarIndex,  // vrgather.vx: index < vl
  SlideUp,            // offset in [0, vl]
  SlideDown,          // offset 0, or clamped with an agnostic result
  CompressMask,       // selector mask is all ones
};

struct OpTraits {
  Family family = Family::Arithmetic;
  LaneClass lane = LaneClass::Elementwise;
  UbRule rule = UbRule::None;
  // vd participates in the computation (multiply-add, slide-up) rather than
  // only supplying masked-off/tail values.
  bool vd_is_operand = false;
  bool conditional_ub = false;
  bool always_undefined() const { return lane == LaneClass::AlwaysUndefined; }
};

OpTraits traits_of(const IntrinsicDef &def);
Family family_of(const IntrinsicDef &def);

// First mnemonic token: "vadd" for "vadd_vv", "vle32" for "vle32_v".
std::string mnemonic_head(const std::string &mnemonic);

}  // namespace rvfuzz
