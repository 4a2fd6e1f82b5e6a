#ifndef POLYBOUND_SIMPLE_SOLVER_H_
#define POLYBOUND_SIMPLE_SOLVER_H_

#include <vector>

#include "polybound/attr_set.h"
#include "polybound/instance.h"
#include "polybound/lp.h"
#include "polybound/oracle.h"
#include "polybound/rational.h"

namespace polybound {

// Flow graph of a simple instance. Vertices are the empty set, every
// singleton and every Y_i, sorted by mask. Delta edges X_i -> Y_i carry
// capacity delta_i; mu edges Y -> X (X a proper subset of Y, |X| <= 1) are
// uncapacitated.
struct SimpleFlowGraph {
  struct Edge {
    int from = 0;
    int to = 0;
    int constraint = -1;  // index of the difference constraint, -1 for mu
    bool is_mu() const { return constraint < 0; }
  };

  int n = 0;
  std::vector<AttrSet> vertices;
  // Delta edges first (in constraint order), then mu edges by (from, to).
  std::vector<Edge> edges;

  int vertex(AttrSet s) const;  // -1 when absent
  int num_delta_edges() const;
};

SimpleFlowGraph build_graph(const Instance& inst);

struct MaxFlowResult {
  Rational value;
  std::vector<Rational> flow;     // per edge of the graph
  std::vector<char> sink_side;    // per vertex: 1 when in the min cut's sink side
};

// Exact maximum flow from the empty set to {t}. capacities holds delta_i per
// constraint. Augmentation stops once limit is reached when limit > 0.
MaxFlowResult max_flow(const SimpleFlowGraph& g,
                       const std::vector<Rational>& capacities, int t,
                       const Rational& limit = Rational());

struct SeparationVerdict {
  bool feasible = true;
  AttrSet v;       // when violated
  Rational lhs;    // sum of delta_i over X_i disjoint from v, Y_i meeting v
  int sink = 0;    // the attribute whose flow fell short
};

// Sum of delta_i over constraints with X_i disjoint from v and Y_i meeting v.
Rational covering_sum(const Instance& inst, const std::vector<Rational>& delta,
                      AttrSet v);

SeparationVerdict separate(const Instance& inst,
                           const std::vector<Rational>& delta);
SeparationVerdict separate(const Instance& inst, const SimpleFlowGraph& g,
                           const std::vector<Rational>& delta);

struct SimpleResult : BoundResult {
  std::vector<Rational> delta;
  // flows[t - 1][e]: unit flow from the empty set to {t} on edge e.
  std::vector<std::vector<Rational>> flows;
  SimpleFlowGraph graph;
  // Covering rows of the final restricted program with their multipliers;
  // the multipliers sum to value, which certifies optimality.
  std::vector<AttrSet> cut_sets;
  std::vector<Rational> cut_duals;
  int rounds = 0;
  int pivots = 0;
};

// Exact optimum of the covering program over delta, generated lazily from
// the max-flow separation oracle, followed by one unit flow per sink.
SimpleResult simple_bound(const Instance& inst);

// The flow program with per-sink flow variables, written out in full. Meant
// for cross-checks on small instances.
LinearProgram build_lp_DprimeS(const Instance& inst);

}  // namespace polybound

#endif  // POLYBOUND_SIMPLE_SOLVER_H_
