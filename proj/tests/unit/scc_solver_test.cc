#include "polybound/scc_solver.h"

#include <gtest/gtest.h>

#include "generators.h"
#include "oracles.h"
#include "polybound/classify.h"
#include "polybound/errors.h"
#include "polybound/reductions.h"

namespace polybound {
namespace {

AttrSet s(std::initializer_list<int> m) { return AttrSet::of(m); }

int count_prefix(const LinearProgram& lp, const std::string& prefix) {
  int c = 0;
  for (int v = 0; v < lp.num_variables(); ++v) {
    c += lp.variable_name(v).rfind(prefix, 0) == 0;
  }
  return c;
}

TEST(LocalMask, RoundTrip) {
  AttrSet v = s({2, 5, 7});
  EXPECT_EQ(local_mask(v, s({5})), 2u);
  EXPECT_EQ(local_mask(v, s({2, 7, 9})), 5u);
  EXPECT_EQ(from_local_mask(v, 6), s({5, 7}));
}

TEST(BuildPSCC, VariableCount) {
  // Components {1,2}, {3}, {4}.
  Instance inst(4, {{AttrSet(), s({1}), 1},
                    {s({1}), s({1, 2}), 1},
                    {s({2}), s({1, 2}), 1},
                    {s({2}), s({2, 3}), 1},
                    {s({3}), s({3, 4}), 1}});
  LinearProgram p = build_lp_PSCC(inst);
  EXPECT_EQ(p.num_variables(), 4 + 2 + 2);
}

TEST(BuildPSCC, SingletonsGiveModularProgram) {
  Instance inst = testing::two_chain_instance();
  LinearProgram p = build_lp_PSCC(inst);
  EXPECT_EQ(p.num_variables(), 4);  // h<j>{} and h<j>{a} per attribute
  LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.value, modular_bound(inst).value);
}

TEST(BuildPSCC, OneComponentMatchesP) {
  Instance inst(2, {{AttrSet(), s({1}), 1}, {s({1}), s({1, 2}), 1}, {s({2}), s({1, 2}), 1}});
  LinearProgram p = build_lp_PSCC(inst);
  LinearProgram full = build_lp_P(inst);
  EXPECT_EQ(p.num_variables(), full.num_variables());
  EXPECT_EQ(solve(p).value, solve(full).value);
}

TEST(BuildDSCC, DualityAndDegenerateCase) {
  Instance inst(2, {{AttrSet(), s({1}), 1}, {s({1}), s({1, 2}), 1}, {s({2}), s({1, 2}), 1}});
  LpSolution p = solve(build_lp_PSCC(inst));
  LinearProgram d = build_lp_DSCC(inst);
  EXPECT_GT(count_prefix(d, "delta"), 0);
  LpSolution ds = solve(d);
  ASSERT_EQ(ds.status, LpStatus::kOptimal);
  EXPECT_EQ(ds.value, p.value);
  EXPECT_EQ(ds.value, solve(build_lp_D(inst)).value);
}

TEST(SccBound, TwoCycle) {
  Instance inst(2, {{s({1}), s({1, 2}), 1}, {s({2}), s({1, 2}), 1}, {AttrSet(), s({1}), 1}});
  SccResult r = scc_bound(inst);
  ASSERT_TRUE(r.bounded);
  EXPECT_EQ(r.value, Rational(2));
  EXPECT_EQ(r.value, polymatroid_bound(inst).value);
  EXPECT_EQ(r.decomposition.size(), 1);
}

TEST(SccBound, AcyclicGivesSingletonTables) {
  Instance inst = testing::two_chain_instance();
  SccResult r = scc_bound(inst);
  EXPECT_EQ(r.value, modular_bound(inst).value);
  ASSERT_EQ(r.witness.components.size(), 2u);
  for (const auto& table : r.witness.tables) EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(check_semimodular(inst, r.witness), "");
}

TEST(SccBound, UnboundedAndCap) {
  SccResult r = scc_bound(Instance(2, {{AttrSet(), s({1}), 1}}));
  EXPECT_FALSE(r.bounded);
  EXPECT_EQ(r.unbounded_attribute, 2);
  Instance cyc(3, {{AttrSet(), s({1}), 1},
                   {s({1}), s({1, 2}), 1},
                   {s({2}), s({2, 3}), 1},
                   {s({3}), s({1, 3}), 1}});
  EXPECT_THROW(scc_bound(cyc, 2), CapExceeded);
}

TEST(SemimodularCheck, FlagsBrokenTables) {
  Instance inst = testing::two_chain_instance();
  SemimodularWitness w = scc_bound(inst).witness;
  w.tables[0][1] += 1;  // h_1({1}) exceeds its constraint
  EXPECT_NE(check_semimodular(inst, w), "");
}

// Random cyclic instances: the projected solve matches the reference
// program; each table is a polymatroid and the constraints hold for the
// assembled function.
TEST(SccProperty, MatchesReference) {
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    RandomInstanceParams p;
    p.n = 1 + static_cast<int>(seed % 4);
    p.k = 2 + static_cast<int>(seed % 5);
    p.max_x = 2;
    p.seed = 400 + seed;
    Instance inst = random_instance(p);
    SccResult r = scc_bound(inst);
    testing::DenseResult ref = testing::reference_polymatroid_bound(inst);
    ASSERT_EQ(r.bounded, ref.status == LpStatus::kOptimal);
    if (!r.bounded) continue;
    ASSERT_EQ(r.value.to_mpq(), ref.value) << seed;
    for (size_t j = 0; j < r.witness.components.size(); ++j) {
      ASSERT_TRUE(testing::is_polymatroid(r.witness.components[j].size(),
                                          r.witness.tables[j]));
    }
    std::vector<Rational> h(uint64_t{1} << inst.n());
    for (uint64_t m = 0; m < h.size(); ++m) h[m] = r.witness.value(AttrSet::from_mask(m));
    ASSERT_TRUE(testing::satisfies_constraints(inst, h)) << seed;
    ASSERT_EQ(h.back(), r.value);
    LpSolution pscc = solve(build_lp_PSCC(inst));
    LpSolution dscc = solve(build_lp_DSCC(inst));
    ASSERT_EQ(pscc.value, r.value) << seed;
    ASSERT_EQ(dscc.value, r.value) << seed;
  }
}

TEST(SccProperty, BlockInstances) {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    Instance inst = testing::block_instance(3, 3, 2, seed);
    SccResult r = scc_bound(inst);
    ASSERT_EQ(r.decomposition.max_component_size(), 3);
    ASSERT_EQ(r.value, polymatroid_bound(inst).value) << seed;
  }
}

}  // namespace
}  // namespace polybound
