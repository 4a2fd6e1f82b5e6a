#include "polybound/flow_lift.h"

#include <gtest/gtest.h>

#include "generators.h"
#include "polybound/errors.h"
#include "polybound/oracle.h"
#include "polybound/reductions.h"
#include "polybound/simple_solver.h"

namespace polybound {
namespace {

AttrSet s(std::initializer_list<int> m) { return AttrSet::of(m); }

TEST(Decompose, SingleEdgeIsOnePath) {
  Instance inst(1, {{AttrSet(), s({1}), 1}});
  SimpleFlowGraph g = build_graph(inst);
  PathDecomposition pd = decompose_flow(inst, g, {{1, 0}});
  EXPECT_EQ(pd.q, Rational(1));
  ASSERT_EQ(pd.paths.size(), 1u);
  ASSERT_EQ(pd.paths[0].size(), 1u);
  EXPECT_EQ(pd.paths[0][0].edges, std::vector<int>{0});
  EXPECT_EQ(pd.paths[0][0].vertices, (std::vector<AttrSet>{AttrSet(), s({1})}));
  EXPECT_EQ(pd.paths[0][0].units, Rational(1));
}

TEST(Decompose, TwoHalfRoutes) {
  // Two parallel edges into {1}, half a unit each.
  Instance inst(1, {{AttrSet(), s({1}), 1}, {AttrSet(), s({1}), 1}});
  SimpleFlowGraph g = build_graph(inst);
  std::vector<Rational> f(g.edges.size());
  f[0] = Rational(1, 2);
  f[1] = Rational(1, 2);
  PathDecomposition pd = decompose_flow(inst, g, {f});
  EXPECT_EQ(pd.epsilon, Rational(1, 2));
  ASSERT_EQ(pd.paths[0].size(), 2u);
  EXPECT_EQ(pd.paths[0][0].units, Rational(1));
  EXPECT_EQ(pd.paths[0][1].units, Rational(1));
}

TEST(Decompose, RejectsBrokenFlows) {
  Instance inst(1, {{AttrSet(), s({1}), 1}});
  SimpleFlowGraph g = build_graph(inst);
  EXPECT_THROW(decompose_flow(inst, g, {{Rational(1, 2), 0}}), PreconditionError);
  EXPECT_THROW(decompose_flow(inst, g, {{-1, 0}}), PreconditionError);
}

TEST(Lift, SingleEdge) {
  Instance inst(1, {{AttrSet(), s({1}), 3}});
  LiftResult r = lift(inst, {1});
  EXPECT_EQ(r.witness.delta, std::vector<Rational>{1});
  // delta alone already meets both rows; nothing else is needed.
  for (const auto& [key, v] : r.witness.mu) EXPECT_TRUE(v.is_zero());
  for (const auto& [key, v] : r.witness.sigma) EXPECT_TRUE(v.is_zero());
  EXPECT_TRUE(verify_witness(inst, r.witness).valid);
}

TEST(Lift, TwoChain) {
  Instance inst = testing::two_chain_instance();
  LiftResult r = lift(inst, {1, 1});
  EXPECT_TRUE(verify_witness(inst, r.witness).valid);
  EXPECT_EQ(total_cost(inst, r.witness.delta), Rational(2));
  LpSolution d = solve(build_lp_D(inst));
  EXPECT_EQ(d.value, Rational(2));
}

TEST(Lift, PostalTraceReplays) {
  Instance inst = testing::postal_instance();
  SimpleResult opt = simple_bound(inst);
  LiftResult r = lift(inst, opt.delta);
  EXPECT_TRUE(verify_witness(inst, r.witness).valid);
  EXPECT_EQ(total_cost(inst, r.witness.delta), Rational(15077, 500));
  DualWitness replay = r.trace.replay(opt.delta);
  EXPECT_EQ(replay.sigma, r.witness.sigma);
  EXPECT_EQ(replay.mu, r.witness.mu);
  std::string text = r.trace.render();
  EXPECT_NE(text.find("mu "), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Lift, RejectsInfeasibleDelta) {
  EXPECT_THROW(lift(testing::two_chain_instance(), {1, 0}), PreconditionError);
  EXPECT_THROW(lift(testing::two_chain_instance(), {1}), PreconditionError);
}

TEST(Verify, ZeroWitnessFailsAtUniverse) {
  Instance inst(2, {{AttrSet(), s({1}), 1}, {AttrSet(), s({2}), 1}});
  DualWitness w;
  w.delta = {0, 0};
  WitnessVerdict v = verify_witness(inst, w);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.z, s({1, 2}));
  EXPECT_EQ(v.excess, Rational(0));
  EXPECT_EQ(v.required, Rational(1));
}

TEST(Verify, NegativeEntry) {
  Instance inst(1, {{AttrSet(), s({1}), 1}});
  DualWitness w;
  w.delta = {1};
  w.mu[{AttrSet(), s({1})}] = -1;
  WitnessVerdict v = verify_witness(inst, w);
  EXPECT_FALSE(v.valid);
  EXPECT_FALSE(v.negative.empty());
}

TEST(Verify, MalformedKeys) {
  Instance inst(2, {{AttrSet(), s({1}), 1}});
  DualWitness w;
  w.delta = {1};
  w.sigma[{s({1}), s({1, 2})}] = 1;  // comparable pair
  EXPECT_THROW(verify_witness(inst, w), PreconditionError);
}

// Removing epsilon from any positive mu entry of a valid lifted witness
// breaks some row.
TEST(Verify, PerturbedWitnessIsCaught) {
  Instance inst = testing::postal_instance();
  LiftResult r = lift(inst, simple_bound(inst).delta);
  int perturbed = 0;
  // The postal witness uses one sigma and no mu. Taking a little off the
  // sigma leaves the top row short.
  for (auto& [key, v] : r.witness.sigma) {
    if (v.sign() <= 0) continue;
    DualWitness w = r.witness;
    w.sigma[key] -= Rational(1, 1000);
    WitnessVerdict verdict = verify_witness(inst, w);
    EXPECT_FALSE(verdict.valid);
    EXPECT_TRUE(verdict.z == (key.first & key.second) || verdict.z == (key.first | key.second));
    ++perturbed;
  }
  EXPECT_GT(perturbed, 0);
}

// Path usage re-aggregated per edge gives back the input flows.
TEST(LiftProperty, DecompositionResumsToFlow) {
  for (uint64_t seed = 1; seed <= 120; ++seed) {
    RandomInstanceParams p;
    p.simple = true;
    p.n = 2 + static_cast<int>(seed % 7);
    p.k = p.n + 3;
    p.max_cost_denominator = 6;
    p.seed = seed;
    Instance inst = random_instance(p);
    SimpleResult opt = simple_bound(inst);
    ASSERT_TRUE(opt.bounded);
    PathDecomposition pd = decompose_flow(inst, opt.graph, opt.flows);
    for (int t = 1; t <= inst.n(); ++t) {
      std::vector<Rational> sum(opt.graph.edges.size());
      Rational units;
      for (const FlowPath& path : pd.paths[t - 1]) {
        ASSERT_EQ(path.vertices.front(), AttrSet());
        ASSERT_EQ(path.vertices.back(), AttrSet::of({t}));
        for (int e : path.edges) sum[e] += path.units * pd.epsilon;
        units += path.units;
      }
      ASSERT_EQ(units * pd.epsilon, Rational(1));
      // Cycles may have been cancelled, so usage is at most the input flow
      // and carries the same unit.
      for (size_t e = 0; e < sum.size(); ++e) {
        ASSERT_LE(sum[e], opt.flows[t - 1][e]) << seed;
      }
    }
  }
}

// Arbitrary feasible (not optimal) delta vectors lift too.
TEST(LiftProperty, FeasibleScaledDeltas) {
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    RandomInstanceParams p;
    p.simple = true;
    p.n = 2 + static_cast<int>(seed % 6);
    p.k = p.n + 2;
    p.seed = 900 + seed;
    Instance inst = random_instance(p);
    std::vector<Rational> delta = simple_bound(inst).delta;
    for (Rational& d : delta) d = d * Rational(3, 2) + Rational(1, 3);
    LiftResult r = lift(inst, delta);
    ASSERT_TRUE(verify_witness(inst, r.witness).valid) << seed;
    ASSERT_EQ(r.witness.delta, delta);
  }
}

}  // namespace
}  // namespace polybound
