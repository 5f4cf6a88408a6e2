#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rvfuzz/intrinsic.hpp"
#include "rvfuzz/listing_gen.hpp"
#include "support.hpp"

using namespace rvfuzz;

TEST(ParseDefinitions, LoadExample) {
  auto defs = parse_definitions("vint8m1_t __riscv_vle8_v_i8m1(const int8_t *rs1, size_t vl);");
  ASSERT_EQ(defs.size(), 1u);
  const auto &d = defs[0];
  EXPECT_EQ(d.category, Category::Load);
  ASSERT_TRUE(d.return_type.is_vector());
  EXPECT_EQ(d.return_type.vtype.token(), "i8m1");
  ASSERT_EQ(d.params.size(), 2u);
  EXPECT_EQ(d.params[0].role, ParamRole::MemoryAddress);
  EXPECT_EQ(d.params[1].role, ParamRole::VlCount);
  EXPECT_EQ(d.alias_count, 1u);
}

TEST(ParseDefinitions, StoreExample) {
  auto defs =
      parse_definitions("void __riscv_vse8_v_u8m1(uint8_t *rs1, vuint8m1_t vs3, size_t vl);");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].category, Category::Store);
}

TEST(ParseDefinitions, OverloadsMerge) {
  auto defs = parse_definitions(
      "vint8m1_t __riscv_vadd(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint16m1_t __riscv_vadd(vint16m1_t vs2, vint16m1_t vs1, size_t vl);\n"
      "vint8m1_t __riscv_vsub(vint8m1_t vs2, vint8m1_t vs1, size_t vl)\n");
  ASSERT_EQ(defs.size(), 2u);
  EXPECT_EQ(defs[0].full_name, "__riscv_vadd");
  EXPECT_EQ(defs[0].alias_count, 2u);
  EXPECT_EQ(defs[1].alias_count, 1u);
  EXPECT_TRUE(defs[0].name_parts.type_tokens.empty());
}

TEST(ParseDefinitions, CommentsIgnored) {
  auto defs = parse_definitions(
      "// arithmetic\n# pragma-like\n\n"
      "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n");
  EXPECT_EQ(defs.size(), 1u);
}

TEST(ParseDefinitions, Errors) {
  EXPECT_THROW(parse_definitions(""), ParseError);
  EXPECT_THROW(parse_definitions("// only a comment\n"), ParseError);
  try {
    parse_definitions(
        "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
        "this is not a prototype\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_definitions("vfloat8m1_t __riscv_vle8_v_f8m1(const float8_t *rs1, size_t vl);"),
               ParseError);
}

TEST(DecodeName, Examples) {
  auto p = decode_name("__riscv_vadd_vv_i8mf8_tumu");
  EXPECT_EQ(p.prefix, "__riscv_");
  EXPECT_EQ(p.mnemonic, "vadd_vv");
  EXPECT_EQ(p.type_tokens, std::vector<std::string>{"i8mf8"});
  EXPECT_EQ(p.policy_suffix, "tumu");

  p = decode_name("__riscv_vreinterpret_v_i8mf8_u8mf8");
  EXPECT_EQ(p.type_tokens, (std::vector<std::string>{"i8mf8", "u8mf8"}));
  EXPECT_FALSE(p.policy_suffix);

  p = decode_name("__riscv_vle32_v_f32m2");
  EXPECT_EQ(p.mnemonic, "vle32_v");
  EXPECT_EQ(p.type_tokens, std::vector<std::string>{"f32m2"});
  EXPECT_FALSE(p.policy_suffix);

  p = decode_name("__riscv_vadd");
  EXPECT_TRUE(p.type_tokens.empty());
}

TEST(DecodeName, Errors) {
  EXPECT_THROW(decode_name("vadd_vv_i8m1"), DecodeError);
  EXPECT_THROW(decode_name("__riscv_vadd_vv_i8m1_tx"), DecodeError);
}

TEST(Classify, Examples) {
  auto one = [](const char *proto) { return parse_prototype_line(proto).category; };
  EXPECT_EQ(one("vint8m1_t __riscv_vle8_v_i8m1(const int8_t *rs1, size_t vl);"), Category::Load);
  EXPECT_EQ(one("size_t __riscv_vsetvl_e64m8(size_t avl);"), Category::Ignored);
  EXPECT_EQ(one("size_t __riscv_vsetvlmax_e32m1();"), Category::Ignored);
  EXPECT_EQ(one("vint8m1_t __riscv_vle8ff_v_i8m1(const int8_t *rs1, size_t *new_vl, size_t vl);"),
            Category::Ignored);
  EXPECT_EQ(one("vuint8m1_t __riscv_vadd_vv_u8m1_m(vbool8_t vm, vuint8m1_t vs2, vuint8m1_t vs1, "
                "size_t vl);"),
            Category::Operation);
}

TEST(Classify, ExtraIgnoredStems) {
  ParseOptions o;
  o.extra_ignored = {"vadd"};
  auto d = parse_prototype_line(
      "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);", 1, o);
  EXPECT_EQ(d.category, Category::Ignored);
}

TEST(RatioAligned, Examples) {
  auto one = [](const char *proto) { return is_ratio_aligned(parse_prototype_line(proto)); };
  auto r = one("vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);");
  EXPECT_TRUE(r.aligned);
  EXPECT_EQ(r.common_ratio, 8u);
  r = one("vint16m2_t __riscv_vwadd_vv_i16m2(vint8m1_t vs2, vint8m1_t vs1, size_t vl);");
  EXPECT_TRUE(r.aligned);
  EXPECT_EQ(r.common_ratio, 8u);
  r = one("vfloat16m1_t __riscv_vlmul_ext_v_f16mf2_f16m1(vfloat16mf2_t value);");
  EXPECT_FALSE(r.aligned);
  EXPECT_FALSE(r.common_ratio);
  EXPECT_THROW(one("size_t __riscv_vsetvl_e8m1(size_t avl);"), ModelError);
}

// Every name in all four built-in listings survives decode and render, and
// each prototype lands in exactly one category.
TEST(Listing, DecodeRenderIdentityAndPartition) {
  std::size_t total = 0;
  for (ListingKind k : {ListingKind::Explicit, ListingKind::ExplicitPolicy, ListingKind::Implicit,
                        ListingKind::ImplicitPolicy}) {
    auto protos = parse_prototypes(generate_listing(k));
    std::size_t per[4] = {};
    for (const auto &d : protos) {
      ASSERT_EQ(render_name(decode_name(d.full_name)), d.full_name);
      ASSERT_EQ(d.name_parts.prefix, "__riscv_");
      ++per[static_cast<int>(d.category)];
      ASSERT_EQ(classify(d), d.category);
    }
    EXPECT_EQ(per[0] + per[1] + per[2] + per[3], protos.size());
    total += protos.size();
  }
  // Prototype counts of the ratified v1.0 API (ELEN=64, Zvfh).
  EXPECT_EQ(total, 26915u + 34476u + 25212u + 34476u);
}

TEST(Listing, AliasCountsAreNameOccurrences) {
  const auto text = generate_listing(ListingKind::Implicit);
  auto protos = parse_prototypes(text);
  auto defs = parse_definitions(text);
  std::map<std::string, std::uint32_t> occ;
  for (const auto &p : protos) ++occ[p.full_name];
  ASSERT_EQ(defs.size(), occ.size());
  std::uint64_t sum = 0;
  for (const auto &d : defs) {
    EXPECT_EQ(d.alias_count, occ[d.full_name]);
    EXPECT_GE(d.alias_count, 1u);
    sum += d.alias_count;
  }
  EXPECT_EQ(sum, protos.size());
  for (const auto &d : *test::explicit_definitions()) EXPECT_EQ(d.alias_count, 1u);
}
