#include <gtest/gtest.h>

#include "rvfuzz/types.hpp"

using namespace rvfuzz;

namespace {

std::vector<VectorType> all_data_types() {
  std::vector<VectorType> out;
  for (ElemKind k : {ElemKind::Int, ElemKind::Uint, ElemKind::Float})
    for (int sew : {8, 16, 32, 64})
      for (int l = -3; l <= 3; ++l)
        if (is_legal_data_type(k, sew, l) && !(k == ElemKind::Float && sew == 8))
          out.push_back(VectorType::data(k, sew, l));
  return out;
}

VectorType tok(const char *t) { return *VectorType::parse_token(t); }

}  // namespace

TEST(VectorType, RatioExamples) {
  EXPECT_EQ(ratio_of(tok("f32m2")), 16u);
  EXPECT_EQ(ratio_of(tok("i8mf8")), 64u);
  EXPECT_EQ(ratio_of(VectorType::mask(8)), 8u);
  // vsetvl_e32m4 configures ratio 8.
  EXPECT_EQ(ratio_of(VectorType::data(ElemKind::Int, 32, 2)), 8u);
}

TEST(VectorType, TokenRoundTrip) {
  for (const auto &t : all_data_types()) {
    auto back = VectorType::parse_token(t.token());
    ASSERT_TRUE(back) << t.token();
    EXPECT_EQ(*back, t);
    auto cn = VectorType::parse_c_name(t.c_name());
    ASSERT_TRUE(cn) << t.c_name();
    EXPECT_EQ(*cn, t);
  }
  for (int r : {1, 2, 4, 8, 16, 32, 64}) {
    auto m = VectorType::mask(r);
    EXPECT_EQ(m.token(), "b" + std::to_string(r));
    EXPECT_EQ(m.c_name(), "vbool" + std::to_string(r) + "_t");
    EXPECT_EQ(*VectorType::parse_c_name(m.c_name()), m);
  }
  EXPECT_EQ(tok("u16m2x3").nfields(), 3);
  EXPECT_EQ(tok("u16m2x3").c_name(), "vuint16m2x3_t");
}

TEST(VectorType, RejectsIllegal) {
  EXPECT_FALSE(VectorType::parse_token("i128m1"));
  EXPECT_FALSE(VectorType::parse_token("i8m16"));
  EXPECT_FALSE(VectorType::parse_token("f8m1"));
  EXPECT_THROW(VectorType::mask(3), ModelError);
  EXPECT_THROW(VectorType::data(ElemKind::Int, 64, -3), ModelError);  // ratio 512
}

TEST(VectorType, LmulRange) {
  for (const auto &t : all_data_types()) {
    Rational l = t.lmul();
    EXPECT_TRUE((l.num == 1 && (l.den == 1 || l.den == 2 || l.den == 4 || l.den == 8)) ||
                (l.den == 1 && (l.num == 2 || l.num == 4 || l.num == 8)));
  }
}

TEST(VectorType, RatioProperties) {
  for (const auto &t : all_data_types()) {
    // Exact rational sew / lmul, computed independently.
    Rational l = t.lmul();
    ASSERT_EQ((t.sew() * l.den) % l.num, 0);
    EXPECT_EQ(t.ratio(), static_cast<std::uint32_t>(t.sew() * l.den / l.num));
    if (t.lmul_log2() >= 0) EXPECT_EQ(t.sew() % t.ratio(), 0u) << t.token();
    if (t.lmul_log2() < 3 && is_legal_data_type(t.kind(), t.sew(), t.lmul_log2() + 1)) {
      EXPECT_GT(t.ratio(), VectorType::data(t.kind(), t.sew(), t.lmul_log2() + 1).ratio());
    }
  }
}

TEST(Vsetvl, Examples) {
  MachineParams m{128, 64};
  EXPECT_EQ(vsetvl_model(1000, tok("i64m8"), m), 16u);
  EXPECT_EQ(vsetvl_model(5, tok("i64m8"), m), 5u);
  EXPECT_EQ(vlmax(tok("i32m2"), m), 8u);
}

TEST(Vsetvl, IllegalPairing) {
  // An unvalidated 32-bit machine cannot hold one ratio-64 element.
  EXPECT_THROW(vlmax(tok("i8mf8"), MachineParams{32, 32}), ModelError);
  EXPECT_EQ(vlmax(tok("i8mf8"), MachineParams{64, 64}), 1u);
  EXPECT_EQ(vsetvl_model(9, tok("i8mf8"), MachineParams{64, 64}), 1u);
}

TEST(MachineParams, Validate) {
  EXPECT_NO_THROW((MachineParams{128, 64}.validate()));
  EXPECT_THROW((MachineParams{96, 64}.validate()), ModelError);
  EXPECT_THROW((MachineParams{32, 64}.validate()), ModelError);
}

TEST(Vsetvl, BoundsProperty) {
  for (std::uint32_t vlen : {64u, 128u, 256u, 512u, 1024u}) {
    MachineParams m{vlen, 64};
    for (const auto &t : all_data_types()) {
      std::uint64_t vmax;
      try {
        vmax = vlmax(t, m);
      } catch (const ModelError &) {
        continue;
      }
      for (std::uint64_t avl = 0; avl < 300; ++avl) {
        auto vl = vsetvl_model(avl, t, m);
        EXPECT_LE(vl, avl);
        EXPECT_LE(vl, vmax);
        EXPECT_EQ(vl == avl, avl <= vmax);
      }
    }
  }
}

// Equal vsetvl results for every avl and VLEN exactly when ratios match.
TEST(Vsetvl, EqualResultsIffEqualRatio) {
  const auto types = all_data_types();
  for (const auto &a : types) {
    for (const auto &b : types) {
      bool same = true;
      for (std::uint32_t vlen : {64u, 128u, 256u, 512u, 1024u}) {
        MachineParams m{vlen, 64};
        std::uint64_t va = 0, vb = 0;
        bool ea = false, eb = false;
        try { va = vlmax(a, m); } catch (const ModelError &) { ea = true; }
        try { vb = vlmax(b, m); } catch (const ModelError &) { eb = true; }
        if (ea || eb) {
          same = same && ea == eb;
          continue;
        }
        for (std::uint64_t avl = 0; avl <= 200 && same; ++avl)
          same = vsetvl_model(avl, a, m) == vsetvl_model(avl, b, m);
      }
      EXPECT_EQ(same, a.ratio() == b.ratio()) << a.token() << " " << b.token();
    }
  }
}

TEST(Vsetvl, SuffixOfRatioType) {
  EXPECT_EQ(vsetvl_suffix(tok("f32m2")), "e32m2");
  EXPECT_EQ(vsetvl_suffix(tok("u8mf8")), "e8mf8");
  EXPECT_EQ(vsetvl_suffix(VectorType::mask(8)), "e8m1");
}
