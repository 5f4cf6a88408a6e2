#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <regex>
#include <set>
#include <sstream>

#include "rvfuzz/codegen.hpp"
#include "support.hpp"

using namespace rvfuzz;
using rvfuzz::test::default_generator;

namespace {

using Printed = std::vector<std::pair<std::string, std::size_t>>;

// Expands the print epilogue of a program into (array, index) pairs.
Printed parse_prints(const std::string &src) {
  static const std::regex line_re(
      R"(^  (?:for \(size_t i = (\d+); i <= (\d+); i \+= (\d+)\) )?)"
      R"re((?:print_f\d+\("(\w+)", |printf\("(\w+)\[%zu\]=[^"]*", )(?:i|\(size_t\)(\d+)),)re");
  Printed out;
  std::istringstream in(src);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (!std::regex_search(line, m, line_re)) continue;
    const std::string name = m[4].matched ? m[4].str() : m[5].str();
    if (m[1].matched) {
      for (std::size_t i = std::stoul(m[1]); i <= std::stoul(m[2]); i += std::stoul(m[3]))
        out.emplace_back(name, i);
    } else {
      out.emplace_back(name, std::stoul(m[6]));
    }
  }
  return out;
}

Printed manifest_of(const ProgramCase &c) {
  Printed out;
  for (const auto &e : c.manifest) out.emplace_back(c.ir.arrays.at(e.array).name, e.index);
  return out;
}

bool host_nan(std::uint64_t bits, int width) {
  if (width == 32) {
    float f;
    std::uint32_t u = static_cast<std::uint32_t>(bits);
    std::memcpy(&f, &u, 4);
    return std::isnan(f);
  }
  if (width == 64) {
    double d;
    std::memcpy(&d, &bits, 8);
    return std::isnan(d);
  }
  return ((bits >> 10) & 0x1f) == 0x1f && (bits & 0x3ff) != 0;
}

// Everything between the header comment line and main().
std::string declarations(const std::string &src) {
  const auto begin = src.find('\n') + 1;
  return src.substr(begin, src.find("int main") - begin);
}

}  // namespace

TEST(Codegen, Deterministic) {
  Generator other(rvfuzz::test::explicit_prototypes(), GenConfig{});
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    for (ScheduleMode m : kAllModes) {
      auto a = default_generator().generate(seed, m);
      auto b = other.generate(seed, m);
      ASSERT_EQ(a.source, b.source) << seed;
      EXPECT_EQ(a.config_snapshot, b.config_snapshot);
    }
  }
}

TEST(Codegen, FileName) {
  auto c = default_generator().generate(5, ScheduleMode::Unit);
  EXPECT_EQ(c.file_name(), "case_5_unit.c");
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.mode, ScheduleMode::Unit);
}

TEST(Codegen, StripMiningSkeleton) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto c = default_generator().generate(seed, ScheduleMode::AllIn);
    const std::string &s = c.source;
    EXPECT_NE(s.find("#include <riscv_vector.h>"), std::string::npos);
    EXPECT_NE(s.find("int main(void) {"), std::string::npos);
    EXPECT_NE(s.find("  size_t avl = " + std::to_string(c.ir.data_len) + ";"), std::string::npos);
    EXPECT_NE(s.find("  for (size_t vl; avl > 0; avl -= vl) {"), std::string::npos);
    EXPECT_NE(s.find("    vl = __riscv_vsetvl_" + vsetvl_suffix(c.ir.ratio_type) + "(avl);"),
              std::string::npos);
    for (const auto &a : c.ir.arrays) {
      EXPECT_NE(s.find("    " + a.ptr_name() + " += "), std::string::npos) << a.name;
    }
    EXPECT_NE(s.find("  return 0;\n}\n"), std::string::npos);
  }
}

TEST(Codegen, SequenceAndDataLength) {
  GenConfig cfg;
  cfg.seq_len_min = 3;
  cfg.seq_len_max = 7;
  cfg.data_len_min = 5;
  cfg.data_len_max = 40;
  Generator g(rvfuzz::test::explicit_prototypes(), cfg);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto c = g.generate(seed, ScheduleMode::Random);
    std::size_t ops = 0;
    for (const auto &st : c.ir.body) ops += st.kind == ScheduleItem::Kind::Op;
    EXPECT_GE(ops, 3u);
    EXPECT_LE(ops, 7u);
    EXPECT_GE(c.ir.data_len, 5u);
    EXPECT_LE(c.ir.data_len, 40u);
  }
}

TEST(Codegen, ManifestMatchesPrintStatements) {
  std::size_t printed = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    for (ScheduleMode m : kAllModes) {
      auto c = default_generator().generate(seed, m);
      auto p = parse_prints(c.source);
      ASSERT_EQ(p, manifest_of(c)) << "seed " << seed << " " << to_string(m);
      printed += p.size();
      if (p.empty()) EXPECT_NE(c.source.find(kNoDefinedElements), std::string::npos);
    }
  }
  EXPECT_GT(printed, 0u);
}

TEST(Codegen, VariantsShareDataAndManifest) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto a = default_generator().generate(seed, ScheduleMode::AllIn);
    auto u = default_generator().generate(seed, ScheduleMode::Unit);
    auto r = default_generator().generate(seed, ScheduleMode::Random);
    EXPECT_EQ(declarations(a.source), declarations(u.source));
    EXPECT_EQ(declarations(a.source), declarations(r.source));
    EXPECT_EQ(manifest_of(a), manifest_of(u));
    EXPECT_EQ(manifest_of(a), manifest_of(r));
  }
}

TEST(Codegen, LoadAndStoreArraysAreSeparate) {
  static const std::regex store_re(R"(__riscv_vs\w*\((?:[^,]*\(.*\), )?(p_\w+))");
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto c = default_generator().generate(seed, ScheduleMode::Random);
    std::set<std::string> store_ptrs;
    for (const auto &a : c.ir.arrays) {
      if (a.role == ArrayRole::StoreDestination) {
        store_ptrs.insert(a.ptr_name());
        EXPECT_TRUE(a.init.empty()) << a.name;
      }
    }
    std::set<std::string> names;
    for (const auto &a : c.ir.arrays) EXPECT_TRUE(names.insert(a.name).second) << a.name;
    // A store-destination pointer appears only in store statements.
    std::istringstream in(c.source);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("    ", 0) != 0 || line.find(" += ") != std::string::npos) continue;
      for (const auto &p : store_ptrs) {
        const auto pos = line.find(p + ",");
        if (pos == std::string::npos) continue;
        EXPECT_EQ(line.find("    __riscv_vs"), 0u) << line;
      }
    }
  }
}

TEST(Codegen, NoNaNInInitializers) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto c = default_generator().generate(seed, ScheduleMode::AllIn);
    for (const auto &a : c.ir.arrays) {
      if (a.kind != ElemKind::Float) continue;
      for (std::uint64_t b : a.init) ASSERT_FALSE(host_nan(b, a.width)) << a.name;
    }
  }
}

TEST(Codegen, RoundingModesAreLegal) {
  static const std::regex frm_re(R"(__RISCV_FRM_(\w+))"), vxrm_re(R"(__RISCV_VXRM_(\w+))");
  const std::set<std::string> frm = {"RNE", "RTZ", "RDN", "RUP", "RMM"};
  const std::set<std::string> vxrm = {"RNU", "RNE", "RDN", "ROD"};
  std::size_t seen = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto s = default_generator().generate(seed, ScheduleMode::AllIn).source;
    for (std::sregex_iterator it(s.begin(), s.end(), frm_re), end; it != end; ++it, ++seen)
      EXPECT_TRUE(frm.count((*it)[1])) << (*it)[0];
    for (std::sregex_iterator it(s.begin(), s.end(), vxrm_re), end; it != end; ++it, ++seen)
      EXPECT_TRUE(vxrm.count((*it)[1])) << (*it)[0];
  }
  EXPECT_GT(seen, 0u);
}

TEST(Codegen, SentinelWhenNothingPrints) {
  ProgramIR ir;
  ir.ratio_type = *VectorType::parse_token("i8m1");
  ir.data_len = 4;
  const std::string s = render_c(ir, "empty");
  EXPECT_NE(s.find("printf(\"no defined elements\\n\");"), std::string::npos);
  EXPECT_EQ(s.rfind("// empty\n", 0), 0u);
}

TEST(Codegen, SnapshotRoundTrip) {
  GenConfig cfg;
  cfg.ratio_type = "f32m2";
  cfg.seq_len_min = 4;
  cfg.seq_len_max = 9;
  cfg.data_len_min = 12;
  cfg.data_len_max = 12;
  cfg.coin_bias = 0.25;
  cfg.vlen_max = 512;
  cfg.oracle_profile = true;
  Generator g(rvfuzz::test::explicit_prototypes(), cfg);
  GenConfig back = gen_config_from_snapshot(g.snapshot());
  EXPECT_EQ(back.ratio_type, cfg.ratio_type);
  EXPECT_EQ(back.seq_len_min, 4u);
  EXPECT_EQ(back.seq_len_max, 9u);
  EXPECT_EQ(back.data_len_min, 12u);
  EXPECT_DOUBLE_EQ(back.coin_bias, 0.25);
  EXPECT_EQ(back.vlen_max, 512u);
  EXPECT_TRUE(back.oracle_profile);
  EXPECT_THROW(gen_config_from_snapshot("{"), ModelError);
  EXPECT_NE(g.snapshot().find(g.listing_digest()), std::string::npos);
}

TEST(Codegen, FixedRatioType) {
  GenConfig cfg;
  cfg.ratio_type = "u16mf2";
  Generator g(rvfuzz::test::explicit_prototypes(), cfg);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto c = g.generate(seed, ScheduleMode::AllIn);
    EXPECT_EQ(c.ir.ratio_type.ratio(), 32u);
    EXPECT_NE(c.source.find("vl = __riscv_vsetvl_e16mf2(avl);"), std::string::npos);
  }
}

TEST(PrintLine, Formats) {
  ArrayDecl i8{"out_0", ArrayRole::StoreDestination, ElemKind::Int, 8};
  EXPECT_EQ(format_print_line(i8, 3, 0xff), "out_0[3]=-1");
  ArrayDecl u16{"out_1", ArrayRole::StoreDestination, ElemKind::Uint, 16};
  EXPECT_EQ(format_print_line(u16, 0, 65535), "out_1[0]=65535");
  ArrayDecl f32{"out_2", ArrayRole::StoreDestination, ElemKind::Float, 32};
  EXPECT_EQ(format_print_line(f32, 1, 0x3f800000), "out_2[1]=0x3f800000");
  EXPECT_EQ(format_print_line(f32, 1, 0x7fc00001), "out_2[1]=nan");
  ArrayDecl f16{"out_3", ArrayRole::StoreDestination, ElemKind::Float, 16};
  EXPECT_EQ(format_print_line(f16, 2, 0x1), "out_3[2]=0x0001");
}
