#ifndef POLYBOUND_ORACLE_H_
#define POLYBOUND_ORACLE_H_

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/instance.h"
#include "polybound/lp.h"
#include "polybound/rational.h"

namespace polybound {

inline constexpr int kDefaultOracleCap = 12;

enum class BoundMethod { kModular, kCoverage, kPolymatroid };

const char* to_string(BoundMethod m);

struct SetPair {
  AttrSet first;
  AttrSet second;
  friend auto operator<=>(const SetPair&, const SetPair&) = default;
};

// Assignment to the variables of the dual program. sigma keys are
// incomparable pairs with the smaller mask first; mu keys (X, Y) have X a
// proper subset of Y and route flow from Y down to X.
struct DualWitness {
  std::vector<Rational> delta;  // one per constraint
  std::map<SetPair, Rational> sigma;
  std::map<SetPair, Rational> mu;
};

// Net inflow at every lattice point touched by a nonzero variable:
//   excess(Z) = sum_{Y_i = Z} delta_i - sum_{X_i = Z} delta_i
//             + sum_{I cap J = Z} sigma_IJ + sum_{I cup J = Z} sigma_IJ
//             - sum_{Z in {I, J}} sigma_IJ
//             + sum_{Z subset Y} mu_ZY - sum_{X subset Z} mu_XZ
std::map<AttrSet, Rational> compute_excess(const Instance& inst,
                                           const DualWitness& w);
Rational total_cost(const Instance& inst, const std::vector<Rational>& delta);

struct BoundResult {
  bool bounded = false;
  Rational value;
  // When unbounded: the lowest attribute whose value can grow without limit,
  // and the set of attributes that can grow together.
  int unbounded_attribute = 0;
  AttrSet growing;
};

struct PolymatroidResult : BoundResult {
  // Normalized optimal polymatroid, indexed by mask (2^n entries).
  std::vector<Rational> h;
  // Optimal dual solution: a hypergraph flow of cost equal to value.
  DualWitness witness;
  int lp_rows = 0;
  int pivots = 0;
};

struct CoverageResult : BoundResult {
  std::map<AttrSet, Rational> lambda;  // nonzero weights only
};

struct ModularResult : BoundResult {
  std::vector<Rational> z;  // z[a - 1] for attribute a
};

// LP P: one variable per subset (variable index == mask), submodularity rows
// for every incomparable pair, monotonicity rows for every proper-subset
// pair, one row per difference constraint.
LinearProgram build_lp_P(const Instance& inst, int cap = kDefaultOracleCap);

// LP D: the dual of P in excess form.
LinearProgram build_lp_D(const Instance& inst, int cap = kDefaultOracleCap);
// Reads a witness back from an optimal point of build_lp_D.
DualWitness witness_from_D(const Instance& inst, const LinearProgram& d,
                           const std::vector<Rational>& point);

// Exact optimum of P, solved through its dual restricted to the elemental
// Shannon hyperedges (same optimum: the elemental inequalities generate the
// polymatroid cone).
PolymatroidResult polymatroid_bound(const Instance& inst,
                                    int cap = kDefaultOracleCap);

LinearProgram build_lp_coverage(const Instance& inst,
                                int cap = kDefaultOracleCap);
CoverageResult coverage_bound(const Instance& inst, int cap = kDefaultOracleCap);

LinearProgram build_lp_modular(const Instance& inst);
ModularResult modular_bound(const Instance& inst);

// Unbounded verdict shared by the polymatroid-type bounds: the closure of the
// empty set misses some attribute.
BoundResult closure_unbounded(const Instance& inst);

// g(S) = sum of lambda_V over V meeting S.
Rational coverage_value(const std::map<AttrSet, Rational>& lambda, AttrSet s);

// Exhaustive polymatroid check of a table indexed by mask. Returns an empty
// string when h is normalized, monotone and submodular.
std::string check_polymatroid(int n, const std::vector<Rational>& h);
// Returns -1 when h satisfies every difference constraint, otherwise the
// first violated index.
int first_violated_constraint(const Instance& inst,
                              const std::vector<Rational>& h);

// 2^bound with three decimals (round half to even), or the exact integer
// when bound is an integer. Display only.
std::string to_cardinality(const Rational& bound);

void check_oracle_cap(int n, int cap);

}  // namespace polybound

#endif  // POLYBOUND_ORACLE_H_
