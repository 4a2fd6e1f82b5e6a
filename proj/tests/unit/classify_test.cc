#include "polybound/classify.h"

#include <gtest/gtest.h>

#include <random>

#include "generators.h"
#include "polybound/reductions.h"

namespace polybound {
namespace {

using Edges = std::vector<std::pair<int, int>>;

Instance make(int n, std::vector<DifferenceConstraint> dcs) {
  return Instance(n, std::move(dcs));
}

TEST(ClassifyTest, PostalIsSimple) {
  InstanceClass c = classify(testing::postal_instance());
  EXPECT_TRUE(c.is_simple);
  EXPECT_FALSE(c.is_acyclic);  // 2 -> 3 and 3 -> 2
  ASSERT_EQ(c.tags.size(), 4u);
  EXPECT_TRUE(c.tags[0].cardinality);
  EXPECT_TRUE(c.tags[2].functional_dependency);
}

TEST(ClassifyTest, ChainIsAcyclic) {
  EXPECT_TRUE(classify(testing::two_chain_instance()).is_acyclic);
}

TEST(ClassifyTest, TwoCycleIsCyclic) {
  Instance inst = make(2, {{AttrSet::of({1}), AttrSet::of({1, 2}), 1},
                           {AttrSet::of({2}), AttrSet::of({1, 2}), 1}});
  EXPECT_FALSE(classify(inst).is_acyclic);
}

TEST(DigraphTest, EdgesFromDefinition) {
  EXPECT_EQ(dependency_digraph(make(1, {{AttrSet(), AttrSet::of({1}), 1}})).edges(),
            Edges{});
  EXPECT_EQ(dependency_digraph(make(2, {{AttrSet::of({1}), AttrSet::of({1, 2}), 1}}))
                .edges(),
            (Edges{{1, 2}}));
  EXPECT_EQ(dependency_digraph(
                make(3, {{AttrSet::of({1, 2}), AttrSet::of({1, 2, 3}), 1}}))
                .edges(),
            (Edges{{1, 3}, {2, 3}}));
}

TEST(SccTest, IsolatedVertices) {
  SccDecomposition d = scc_decompose(Instance(3, {}));
  EXPECT_EQ(d.components,
            (std::vector<AttrSet>{AttrSet::of({1}), AttrSet::of({2}), AttrSet::of({3})}));
}

TEST(SccTest, TwoCycleIsOneComponent) {
  Instance inst = make(2, {{AttrSet::of({1}), AttrSet::of({1, 2}), 1},
                           {AttrSet::of({2}), AttrSet::of({1, 2}), 1}});
  EXPECT_EQ(scc_decompose(inst).components, std::vector<AttrSet>{AttrSet::of({1, 2})});
}

TEST(SccTest, TopologicalOrder) {
  Instance inst = make(2, {{AttrSet::of({2}), AttrSet::of({1, 2}), 1}});
  // Edge 2 -> 1, so {2} comes first.
  EXPECT_EQ(scc_decompose(inst).components,
            (std::vector<AttrSet>{AttrSet::of({2}), AttrSet::of({1})}));
  Instance fwd = make(2, {{AttrSet::of({1}), AttrSet::of({1, 2}), 1}});
  EXPECT_EQ(scc_decompose(fwd).components,
            (std::vector<AttrSet>{AttrSet::of({1}), AttrSet::of({2})}));
}

TEST(ClosureTest, ReachesFromEmptySet) {
  EXPECT_EQ(closure_from_empty(testing::two_chain_instance()), AttrSet::of({1, 2}));
  EXPECT_EQ(closure_from_empty(make(2, {{AttrSet(), AttrSet::of({1}), 1}})),
            AttrSet::of({1}));
  EXPECT_EQ(closure_from_empty(make(2, {{AttrSet::of({1}), AttrSet::of({1, 2}), 1}})),
            AttrSet());
}

// Reachability oracle: a, b share a component iff each reaches the other.
TEST(SccProperty, ComponentsMatchMutualReachability) {
  for (uint64_t seed = 1; seed <= 150; ++seed) {
    RandomInstanceParams p;
    p.n = 2 + static_cast<int>(seed % 10);
    p.k = p.n + static_cast<int>(seed % 5);
    p.max_x = 2;
    p.seed = seed;
    Instance inst = random_instance(p);
    DependencyDigraph g = dependency_digraph(inst);
    const int n = inst.n();
    std::vector<AttrSet> reach(n + 1);
    for (int a = 1; a <= n; ++a) {
      AttrSet r = AttrSet::of({a});
      bool grew = true;
      while (grew) {
        AttrSet next = r;
        for (int u : r) next |= g.successors(u);
        grew = next != r;
        r = next;
      }
      reach[a] = r;
    }
    SccDecomposition d = scc_decompose(inst);
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        bool same = reach[a].contains(b) && reach[b].contains(a);
        ASSERT_EQ(same, d.component_of(a) == d.component_of(b)) << seed;
        if (g.has_edge(a, b)) ASSERT_LE(d.component_of(a), d.component_of(b)) << seed;
      }
    }
  }
}

TEST(ClassifyProperty, GeneratorFlagsHold) {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    RandomInstanceParams p;
    p.n = 6;
    p.k = 8;
    p.seed = seed;
    p.simple = true;
    EXPECT_TRUE(classify(random_instance(p)).is_simple);
    p.simple = false;
    p.acyclic = true;
    EXPECT_TRUE(classify(random_instance(p)).is_acyclic);
    EXPECT_EQ(random_instance(p), random_instance(p));
  }
}

}  // namespace
}  // namespace polybound
