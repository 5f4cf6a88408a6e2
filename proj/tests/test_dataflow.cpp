#include <gtest/gtest.h>

#include <set>

#include "rvfuzz/dataflow.hpp"
#include "rvfuzz/scheduling.hpp"
#include "rvfuzz/selection.hpp"
#include "support.hpp"

using namespace rvfuzz;

namespace {

std::vector<IntrinsicDef> small_listing() {
  return parse_definitions(
      "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint16m2_t __riscv_vwadd_vv_i16m2(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint8m2_t __riscv_vlmul_ext_v_i8m1_i8m2(vint8m1_t value);\n");
}

// Dependency pairs over ops i < j, scanned from the bindings alone.
struct Scenarios {
  bool rr = false, rw = false, wr = false, ww = false;
};

void scan(const std::vector<OpInstance> &ops, Scenarios &s) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      std::set<int> ri, rj;
      for (int r : ops[i].bound_params)
        if (r >= 0) ri.insert(r);
      for (int r : ops[j].bound_params)
        if (r >= 0) rj.insert(r);
      auto wi = ops[i].bound_return, wj = ops[j].bound_return;
      for (int r : ri) s.rr = s.rr || rj.count(r);
      if (wj) s.rw = s.rw || ri.count(*wj);
      if (wi) s.wr = s.wr || rj.count(*wi);
      if (wi && wj) s.ww = s.ww || *wi == *wj;
    }
  }
}

}  // namespace

TEST(CoinFlip, FixedSeedFixedSequence) {
  Rng a(9), b(9);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(coin_flip(a), coin_flip(b));
}

TEST(CoinFlip, FairOnAverage) {
  Rng r(2024);
  int heads = 0;
  for (int i = 0; i < 100000; ++i) heads += coin_flip(r);
  const double mean = heads / 100000.0;
  EXPECT_GE(mean, 0.49);
  EXPECT_LE(mean, 0.51);
}

TEST(Allocate, AlwaysFresh) {
  auto defs = small_listing();
  auto ops = make_instances({&defs[0], &defs[1], &defs[0]});
  Rng rng(1);
  AllocConfig cfg;
  cfg.coin = [] { return true; };
  Allocation a = allocate(ops, rng, cfg);
  std::set<int> seen;
  for (const auto &op : ops) {
    for (int r : op.bound_params) {
      if (r < 0) continue;  // vl
      EXPECT_TRUE(a.regs[r].from_memory);
      EXPECT_TRUE(seen.insert(r).second);
    }
    ASSERT_TRUE(op.bound_return);
    EXPECT_FALSE(a.regs[*op.bound_return].from_memory);
    EXPECT_TRUE(seen.insert(*op.bound_return).second);
  }
  EXPECT_EQ(a.regs.size(), 9u);
}

TEST(Allocate, AlwaysReuseWithSeededTable) {
  auto defs = small_listing();
  auto ops = make_instances({&defs[0], &defs[0], &defs[0]});
  Rng rng(1);
  AllocConfig cfg;
  cfg.coin = [] { return false; };
  VReg seed;
  seed.vtype = *VectorType::parse_token("i8m1");
  seed.from_memory = true;
  Allocation a = allocate(ops, rng, cfg, {seed});
  ASSERT_EQ(a.regs.size(), 1u);
  for (const auto &op : ops) {
    EXPECT_EQ(op.bound_params, (std::vector<int>{0, 0, -1}));
    EXPECT_EQ(op.bound_return, 0);
  }
}

TEST(Allocate, EmptyBucketOverridesCoin) {
  auto defs = small_listing();
  auto ops = make_instances({&defs[0]});
  Rng rng(1);
  AllocConfig cfg;
  cfg.coin = [] { return false; };
  Allocation a = allocate(ops, rng, cfg);
  // vs2 is fresh because the table is empty; vs1 then reuses it.
  EXPECT_EQ(ops[0].bound_params[0], 0);
  EXPECT_EQ(ops[0].bound_params[1], 0);
  EXPECT_TRUE(a.regs[0].from_memory);
  EXPECT_EQ(ops[0].bound_return, 0);
}

TEST(Allocate, QuarantinesAlwaysUndefined) {
  auto defs = small_listing();
  auto ops = make_instances({&defs[2], &defs[2]});
  Rng rng(3);
  AllocConfig cfg;
  cfg.coin = [] { return false; };
  Allocation a = allocate(ops, rng, cfg);
  ASSERT_TRUE(ops[0].bound_return && ops[1].bound_return);
  EXPECT_NE(*ops[0].bound_return, *ops[1].bound_return);
  EXPECT_TRUE(a.regs[*ops[0].bound_return].quarantined);
  EXPECT_TRUE(a.table.active(*VectorType::parse_token("i8m2")).empty());
}

TEST(VReg, Names) {
  VReg r;
  r.id = 4;
  EXPECT_EQ(r.name(), "vreg_4");
  r.from_memory = true;
  EXPECT_EQ(r.name(), "vreg_4_mem");
}

// Table soundness and use-define correctness over random sequences.
TEST(Allocate, TableSoundAndUseDefine) {
  const auto &defs = *test::explicit_prototypes();
  auto pool = filter_candidates(defs, 16);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    auto ops = make_instances(select_sequence(pool, 10, rng));
    Allocation a = allocate(ops, rng);
    std::map<std::string, std::vector<int>> expect;
    for (const auto &r : a.regs)
      if (!r.quarantined) expect[r.vtype.token()].push_back(r.id);
    std::map<std::string, std::vector<int>> got;
    for (const auto &[k, ids] : a.table.entries())
      if (!ids.empty()) got[k] = ids;
    ASSERT_EQ(got, expect) << "seed " << seed;
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t k = 0; k < ops[i].bound_params.size(); ++k) {
        int r = ops[i].bound_params[k];
        if (r < 0) continue;
        ASSERT_EQ(a.regs[r].vtype, ops[i].def->params[k].type.vtype);
        ASSERT_FALSE(a.regs[r].quarantined);
      }

    // Walk the unit schedule: loads define, ops read then write.
    PrefixSuffix ps = derive_prefix_suffix(ops, a.regs);
    std::set<int> defined;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (int r : ps.P[i]) defined.insert(r);
      for (int r : reads_of(ops[i])) ASSERT_TRUE(defined.count(r)) << "seed " << seed;
      if (auto w = write_of(ops[i])) defined.insert(*w);
    }
  }
}

TEST(Allocate, AllFourDependencyScenarios) {
  const auto &defs = *test::explicit_prototypes();
  std::map<std::uint32_t, std::vector<const IntrinsicDef *>> pools;
  Scenarios s;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const std::uint32_t r = 1u << (seed % 7);
    if (!pools.count(r)) pools[r] = filter_candidates(defs, r);
    Rng rng(seed);
    auto ops = make_instances(select_sequence(pools[r], 10, rng));
    allocate(ops, rng);
    scan(ops, s);
  }
  EXPECT_TRUE(s.rr);
  EXPECT_TRUE(s.rw);
  EXPECT_TRUE(s.wr);
  EXPECT_TRUE(s.ww);
}

TEST(Allocate, DeterministicPerSeed) {
  auto pool = filter_candidates(*test::explicit_prototypes(), 8);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Rng r1(seed), r2(seed);
    auto a = make_instances(select_sequence(pool, 10, r1));
    auto b = make_instances(select_sequence(pool, 10, r2));
    allocate(a, r1);
    allocate(b, r2);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].bound_params, b[i].bound_params);
      EXPECT_EQ(a[i].bound_return, b[i].bound_return);
    }
  }
}
