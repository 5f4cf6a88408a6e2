#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "rvfuzz/coverage.hpp"
#include "support.hpp"

using namespace rvfuzz;

namespace {

// vadd_vv_i8m1 has one prototype line, vsub_vv_i8m1 two (overloads).
std::vector<IntrinsicDef> two_defs() {
  return parse_definitions(
      "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint8m1_t __riscv_vsub_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint8m1_t __riscv_vsub_vv_i8m1(vbool8_t vm, vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n");
}

std::uint64_t count_of(const CoverageReport &r, const std::string &name) {
  for (const auto &e : r.entries)
    if (e.name == name) return e.count;
  return ~std::uint64_t{0};
}

}  // namespace

TEST(Coverage, FormulaExample) {
  auto defs = two_defs();
  ASSERT_EQ(defs.size(), 2u);
  // Weights (1, 2), counts (3, 1): (min(3,1) + min(1,2)) / 3 = 2/3.
  auto r = compute_coverage({"__riscv_vadd_vv_i8m1(a); __riscv_vadd_vv_i8m1(b);",
                             "__riscv_vadd_vv_i8m1(c); __riscv_vsub_vv_i8m1(d);"},
                            defs);
  EXPECT_EQ(count_of(r, "__riscv_vadd_vv_i8m1"), 3u);
  EXPECT_EQ(count_of(r, "__riscv_vsub_vv_i8m1"), 1u);
  EXPECT_EQ(r.covered, 2u);
  EXPECT_EQ(r.total_weight, 3u);
  EXPECT_DOUBLE_EQ(r.coverage(), 2.0 / 3.0);
  EXPECT_EQ(r.corpus_size, 2u);
}

TEST(Coverage, ZeroOccurrences) {
  auto r = compute_coverage({"int main(void) { return 0; }"}, two_defs());
  EXPECT_EQ(r.coverage(), 0.0);
}

TEST(Coverage, EmptyDefinitionsRejected) {
  EXPECT_THROW(compute_coverage({"x"}, {}), std::invalid_argument);
}

TEST(Coverage, SaturatesAtWeight) {
  std::string prog;
  for (int i = 0; i < 50; ++i) prog += "__riscv_vsub_vv_i8m1(x);\n";
  auto r = compute_coverage({prog}, two_defs());
  for (const auto &e : r.entries) EXPECT_LE(e.contribution(), e.weight);
  EXPECT_EQ(r.covered, 2u);
}

TEST(Coverage, IdentifierBoundaries) {
  auto defs = parse_definitions(
      "vint8m1_t __riscv_vadd_vv_i8m1(vint8m1_t vs2, vint8m1_t vs1, size_t vl);\n"
      "vint8m1_t __riscv_vadd_vv_i8m1_m(vbool8_t vm, vint8m1_t vs2, vint8m1_t vs1, size_t "
      "vl);\n");
  auto r = compute_coverage({"__riscv_vadd_vv_i8m1_m(m, a, b, vl); x__riscv_vadd_vv_i8m1(a); "
                             "__riscv_vadd_vv_i8m1x; (__riscv_vadd_vv_i8m1)"},
                            defs);
  EXPECT_EQ(count_of(r, "__riscv_vadd_vv_i8m1_m"), 1u);
  EXPECT_EQ(count_of(r, "__riscv_vadd_vv_i8m1"), 1u);
}

TEST(Coverage, PureVaddCorpusIsArithmeticOnly) {
  const auto &defs = *rvfuzz::test::explicit_definitions();
  auto r = compute_coverage({"__riscv_vadd_vv_i32m1(a, b, vl); __riscv_vadd_vx_u8m2(a, 1, vl);"},
                            defs);
  auto fam = category_breakdown(r, defs);
  for (int f = 0; f < kFamilyCount; ++f) {
    if (static_cast<Family>(f) == Family::Arithmetic) EXPECT_GT(fam[f].covered, 0u);
    else EXPECT_EQ(fam[f].covered, 0u) << to_string(static_cast<Family>(f));
  }
}

TEST(Coverage, MonotoneAndIncrementalEqualsBatch) {
  const auto &defs = *rvfuzz::test::explicit_definitions();
  const auto &g = rvfuzz::test::default_generator();
  CoverageCounter inc(defs);
  std::vector<std::string> corpus;
  double prev = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    corpus.push_back(g.generate(seed, ScheduleMode::AllIn).source);
    inc.add(corpus.back());
    const double cov = inc.report().coverage();
    EXPECT_GE(cov, prev);
    EXPECT_LE(cov, 1.0);
    prev = cov;
  }
  auto batch = compute_coverage(corpus, defs);
  EXPECT_EQ(batch.covered, inc.report().covered);
  EXPECT_EQ(batch.corpus_size, 60u);
  // Split and merged counters agree as well.
  CoverageCounter a(defs), b(defs);
  for (std::size_t i = 0; i < corpus.size(); ++i) (i % 2 ? a : b).add(corpus[i]);
  a.merge(b);
  EXPECT_EQ(a.report().covered, batch.covered);
  EXPECT_EQ(a.report().corpus_size, batch.corpus_size);
}

TEST(Coverage, FamiliesPartitionTheNumerator) {
  const auto &defs = *rvfuzz::test::explicit_definitions();
  const auto &g = rvfuzz::test::default_generator();
  std::vector<std::string> corpus;
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    corpus.push_back(g.generate(seed, ScheduleMode::AllIn).source);
  auto r = compute_coverage(corpus, defs);
  auto fam = category_breakdown(r, defs);
  std::uint64_t covered = 0, weight = 0;
  for (const auto &f : fam) {
    covered += f.covered;
    weight += f.weight;
  }
  EXPECT_EQ(covered, r.covered);
  EXPECT_EQ(weight, r.total_weight);
  // Segment accesses trail every other family.
  const double seg = fam[static_cast<int>(Family::SegmentLoadStore)].ratio();
  for (int f = 0; f < kFamilyCount; ++f) {
    if (static_cast<Family>(f) != Family::SegmentLoadStore && fam[f].weight) {
      EXPECT_LE(seg, fam[f].ratio()) << to_string(static_cast<Family>(f));
    }
  }
}

TEST(Coverage, Deterministic) {
  const auto &defs = *rvfuzz::test::explicit_definitions();
  std::vector<std::string> corpus;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    corpus.push_back(rvfuzz::test::default_generator().generate(seed, ScheduleMode::Unit).source);
  EXPECT_EQ(format_coverage_records(compute_coverage(corpus, defs), defs),
            format_coverage_records(compute_coverage(corpus, defs), defs));
  EXPECT_EQ(format_coverage_table(compute_coverage(corpus, defs), defs),
            format_coverage_table(compute_coverage(corpus, defs), defs));
}

TEST(Coverage, RecordsAreJsonLines) {
  auto defs = two_defs();
  auto r = compute_coverage({"__riscv_vsub_vv_i8m1(x);"}, defs);
  std::istringstream in(format_coverage_records(r, defs));
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.is_object());
  }
  EXPECT_GE(lines, 3u);
  EXPECT_NE(format_coverage_table(r, defs).find("33.33"), std::string::npos)
      << format_coverage_table(r, defs);
}
