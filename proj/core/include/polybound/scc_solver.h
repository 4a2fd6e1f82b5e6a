#ifndef POLYBOUND_SCC_SOLVER_H_
#define POLYBOUND_SCC_SOLVER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/classify.h"
#include "polybound/instance.h"
#include "polybound/lp.h"
#include "polybound/oracle.h"
#include "polybound/rational.h"

namespace polybound {

inline constexpr int kDefaultComponentCap = 16;

// Position of x within v: bit r is set when the r-th smallest member of v is
// in x. Members of x outside v are ignored.
uint64_t local_mask(AttrSet v, AttrSet x);
// Inverse of local_mask.
AttrSet from_local_mask(AttrSet v, uint64_t local);

// A sum of polymatroids, one per strongly connected component.
struct SemimodularWitness {
  std::vector<AttrSet> components;
  // tables[j][local_mask(components[j], X)] = h_j(X), normalized.
  std::vector<std::vector<Rational>> tables;

  Rational component_value(int j, AttrSet x) const;
  // h(X) = sum_j h_j(X cap V_j).
  Rational value(AttrSet x) const;
};

// Empty when every table is a polymatroid and every difference constraint
// holds for the induced h; otherwise the first problem found.
std::string check_semimodular(const Instance& inst, const SemimodularWitness& w);

// Variables h<j>{X} for every component j (1-based) and X within it;
// submodularity and monotonicity rows per component, one coupled row per
// difference constraint.
LinearProgram build_lp_PSCC(const Instance& inst,
                            int cap = kDefaultComponentCap);

// The projected dual: shared delta<i>, per component sigma<j>{I}|{J} and
// mu<j>{Y}->{X}, one excess row per component and lattice point.
LinearProgram build_lp_DSCC(const Instance& inst,
                            int cap = kDefaultComponentCap);

struct SccResult : BoundResult {
  SccDecomposition decomposition;
  SemimodularWitness witness;
  int lp_rows = 0;
  int lp_variables = 0;
  int pivots = 0;
};

// Exact polymatroid bound through the projected programs. The dual is solved
// with elemental hyperedges only, which leaves the optimum unchanged.
SccResult scc_bound(const Instance& inst, int cap = kDefaultComponentCap);

void check_component_cap(const SccDecomposition& d, int cap);

}  // namespace polybound

#endif  // POLYBOUND_SCC_SOLVER_H_
