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

#include "rvfuzz/semantics.hpp"

#include <array>
#include <string_view>

namespace rvfuzz {

namespace {

bool starts(std::string_view s, std::string_view p) { return s.starts_with(p); }

bool is_segment_head(std::string_view h) {
  return starts(h, "vlseg") || starts(h, "vsseg") || starts(h, "vlsseg") ||
         starts(h, "vssseg") || starts(h, "vloxseg") || starts(h, "vluxseg") ||
         starts(h, "vsoxseg") || starts(h, "vsuxseg");
}

bool is_memory_head(std::string_view h) {
  if (is_segment_head(h)) return true;
  for (std::string_view p : {"vle", "vse", "vlse", "vsse", "vloxei", "vluxei",
                             "vsoxei", "vsuxei"}) {
    if (starts(h, p) && h.size() > p.size() &&
        (h[p.size()] >= '0' && h[p.size()] <= '9'))
      return true;
  }
  return h == "vlm" || h == "vsm";
}

bool one_of(std::string_view h, std::initializer_list<std::string_view> xs) {
  for (auto x : xs)
    if (h == x) return true;
  return false;
}

}  // namespace

const char *to_string(Family f) {
  switch (f) {
    case Family::LoadStore: return "load/store";
    case Family::SegmentLoadStore: return "segment load/store";
    case Family::Arithmetic: return "arithmetic";
    case Family::Mask: return "mask";
    case Family::Reduction: return "reduction";
    case Family::Permutation: return "permutation";
    case Family::Conversion: return "conversion";
    case Family::Misc: return "misc";
  }
  return "?";
}

std::string mnemonic_head(const std::string &mnemonic) {
  return mnemonic.substr(0, mnemonic.find('_'));
}

OpTraits traits_of(const IntrinsicDef &def) {
  const std::string &mn = def.name_parts.mnemonic;
  const std::string h = mnemonic_head(mn);
  OpTraits t;

  if (h == "vsetvl" || h == "vsetvlmax") {
    t.family = Family::Misc;
    t.lane = LaneClass::Config;
    return t;
  }
  if (is_memory_head(h)) {
    t.family = is_segment_head(h) ? Family::SegmentLoadStore : Family::LoadStore;
    t.lane = LaneClass::Memory;
    return t;
  }
  if (starts(h, "vred") || starts(h, "vwred") || starts(h, "vfred") ||
      starts(h, "vfwred")) {
    t.family = Family::Reduction;
    t.lane = LaneClass::Reduction;
    return t;
  }
  if (one_of(h, {"vreinterpret", "vundefined", "vlmul"})) {
    t.family = Family::Misc;
    t.lane = LaneClass::AlwaysUndefined;
    return t;
  }
  if (one_of(h, {"vset", "vget", "vcreate"})) {
    t.family = Family::Misc;
    bool tuple = false;
    for (const auto &vt : def.vector_types()) tuple = tuple || vt.is_tuple();
    if (!tuple) t.lane = LaneClass::Reshape;
    else if (h == "vset") t.lane = LaneClass::TupleInsert;
    else if (h == "vget") t.lane = LaneClass::TupleExtract;
    else t.lane = LaneClass::TupleCreate;
    return t;
  }
  if (one_of(h, {"vfcvt", "vfwcvt", "vfncvt", "vwcvt", "vwcvtu", "vncvt",
                 "vsext", "vzext"})) {
    t.family = Family::Conversion;
    return t;
  }
  if (one_of(h, {"vmand", "vmnand", "vmandn", "vmxor", "vmor", "vmnor", "vmorn",
                 "vmxnor", "vmmv", "vmnot", "vmclr", "vmset", "vid"})) {
    t.family = Family::Mask;
    return t;
  }
  if (one_of(h, {"vcpop", "vfirst"})) {
    t.family = Family::Mask;
    t.lane = LaneClass::ScalarResult;
    t.conditional_ub = true;
    return t;
  }
  if (one_of(h, {"vmsbf", "vmsif", "vmsof", "viota"})) {
    t.family = Family::Mask;
    t.lane = LaneClass::CrossLane;
    t.conditional_ub = true;
    return t;
  }
  if (mn.starts_with("vmv_x_s") || mn.starts_with("vfmv_f_s")) {
    t.family = Family::Permutation;
    t.lane = LaneClass::ScalarResult;
    return t;
  }
  if (mn.starts_with("vmv_s_x") || mn.starts_with("vfmv_s_f")) {
    t.family = Family::Permutation;
    t.lane = LaneClass::ElementZero;
    return t;
  }
  if (h == "vslideup") {
    t.family = Family::Permutation;
    t.lane = LaneClass::CrossLane;
    t.rule = UbRule::SlideUp;
    t.vd_is_operand = true;
    t.conditional_ub = true;
    return t;
  }
  if (h == "vslidedown") {
    t.family = Family::Permutation;
    t.lane = LaneClass::CrossLane;
    t.rule = UbRule::SlideDown;
    t.conditional_ub = true;
    return t;
  }
  if (one_of(h, {"vslide1up", "vslide1down", "vfslide1up", "vfslide1down"})) {
    t.family = Family::Permutation;
    t.lane = LaneClass::CrossLane;
    return t;
  }
  if (h == "vrgather" || h == "vrgatherei16") {
    t.family = Family::Permutation;
    t.lane = LaneClass::CrossLane;
    t.rule = mn.ends_with("_vx") ? UbRule::GatherScalarIndex : UbRule::GatherIndex;
    t.conditional_ub = true;
    return t;
  }
  if (h == "vcompress") {
    t.family = Family::Permutation;
    t.lane = LaneClass::CrossLane;
    t.rule = UbRule::CompressMask;
    t.conditional_ub = true;
    return t;
  }
  t.family = Family::Arithmetic;
  static constexpr std::array<std::string_view, 20> kMacc = {
      "vmacc",   "vnmsac",   "vmadd",    "vnmsub",   "vwmacc",
      "vwmaccu", "vwmaccsu", "vwmaccus", "vfmacc",   "vfnmacc",
      "vfmsac",  "vfnmsac",  "vfmadd",   "vfnmadd",  "vfmsub",
      "vfnmsub", "vfwmacc",  "vfwnmacc", "vfwmsac",  "vfwnmsac"};
  for (auto m : kMacc)
    if (h == m) t.vd_is_operand = true;
  return t;
}

Family family_of(const IntrinsicDef &def) { return traits_of(def).family; }

}  // namespace rvfuzz
