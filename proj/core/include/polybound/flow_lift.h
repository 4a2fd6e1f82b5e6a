#ifndef POLYBOUND_FLOW_LIFT_H_
#define POLYBOUND_FLOW_LIFT_H_

#include <string>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/instance.h"
#include "polybound/oracle.h"
#include "polybound/rational.h"
#include "polybound/simple_solver.h"

namespace polybound {

// A simple path from the empty set to {t} that carries units * epsilon.
struct FlowPath {
  std::vector<int> edges;         // edge indices of the flow graph
  std::vector<AttrSet> vertices;  // edges.size() + 1 sets, source first
  Rational units;                 // positive integer
};

struct PathDecomposition {
  Rational q;        // common denominator of every flow value
  Rational epsilon;  // 1 / q
  // paths[t - 1]: the paths to {t}, ordered by vertex sequence then edges.
  std::vector<std::vector<FlowPath>> paths;
};

// Splits unit flows (flows[t - 1][e]) into epsilon-paths. Cycles in the
// input are cancelled first. Throws PreconditionError when a flow is
// negative, does not conserve, or does not carry exactly one unit.
PathDecomposition decompose_flow(const Instance& inst, const SimpleFlowGraph& g,
                                 const std::vector<std::vector<Rational>>& flows);
PathDecomposition decompose_flow(const Instance& inst,
                                 const std::vector<std::vector<Rational>>& flows);

// One variable update made by the lift.
struct LiftStep {
  enum class Var { kSigma, kMu };
  Var var = Var::kMu;
  SetPair key;
  Rational change;
  int target = 0;    // the sink i + 1 being processed, 0 for the setup
  std::string step;  // "init", "f1", "f2a", "f2a+", "f2b.i", ... "r1a", "r2"
};

struct LiftTrace {
  std::vector<LiftStep> steps;

  // Applies the steps to an all-zero assignment with the given delta.
  DualWitness replay(const std::vector<Rational>& delta) const;
  // One line per step: "<target> <step> sigma {1}|{2} +1/2".
  std::string render() const;
};

struct LiftResult {
  DualWitness witness;
  LiftTrace trace;
  int chunks = 0;  // forward path steps taken, each a run of equal choices
};

// Extends a feasible delta of a simple instance to a full dual witness with
// the same delta. Every intermediate invariant is checked and reported as
// InvariantViolation.
LiftResult lift(const Instance& inst, const std::vector<Rational>& delta,
                const PathDecomposition& paths);
// Decomposes max flows computed for delta itself.
LiftResult lift(const Instance& inst, const std::vector<Rational>& delta);

struct WitnessVerdict {
  bool valid = true;
  AttrSet z;          // first violated lattice point (by mask)
  Rational excess;    // its excess
  Rational required;  // the row's right-hand side
  // Set when a variable is negative rather than a row violated.
  std::string negative;
};

// Checks the rows of the dual program at every touched lattice point plus the
// empty set and the universe. Throws PreconditionError on malformed keys.
WitnessVerdict verify_witness(const Instance& inst, const DualWitness& w);

}  // namespace polybound

#endif  // POLYBOUND_FLOW_LIFT_H_
