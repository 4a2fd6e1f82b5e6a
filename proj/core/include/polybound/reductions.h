#ifndef POLYBOUND_REDUCTIONS_H_
#define POLYBOUND_REDUCTIONS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/instance.h"
#include "polybound/rational.h"

namespace polybound {

// Copies of attribute i: x_i = i, y_i = n + i. Two zero-cost dependencies tie
// each pair together; every original (A, B, d) becomes (x(A), x(A) + y(B), d),
// so all remaining edges run from x-copies to y-copies. Throws CapExceeded
// when 2n > 64.
Instance to_acyclic_plus_fd(const Instance& inst);

// Repeatedly merges a pair of attributes of one constraint into a fresh
// attribute (numbered n + 1, n + 2, ...) and adds three consistency
// dependencies, until every constraint has |X| <= 2 and |Y| <= 3, with
// |X| = 2 and cost 0 whenever |Y| = 3, and |X| = 1 whenever |Y| = 2.
// iterations, when given, receives the number of merges. Throws CapExceeded
// when the universe would pass 64.
Instance to_small_arity(const Instance& inst, int* iterations = nullptr);

struct HittingSetInstance {
  int elements = 0;           // ground set {1..elements}
  std::vector<AttrSet> sets;  // each nonempty, within the ground set
  int budget = 1;

  friend bool operator==(const HittingSetInstance&,
                         const HittingSetInstance&) = default;
};

// Throws InvalidInstance when a set is empty or out of range or budget < 1.
void validate(const HittingSetInstance& hs);

// "elements 4", "set {1,3}", "budget 2" lines; # comments allowed.
HittingSetInstance parse_hitting_set(std::istream& in);
HittingSetInstance parse_hitting_set(std::string_view text);
std::string render_hitting_set(const HittingSetInstance& hs);

struct GadgetOutput {
  Instance instance;  // over the elements plus e* = elements + 1
  std::vector<Rational> delta_hat;
};

// Constraints in order: (empty, {e}) for every element with weight
// 1/(budget+1); (S, E') per set with weight m; ({e*}, E') with weight m.
// Every cost is 1. Throws CapExceeded when elements + 1 > 64.
GadgetOutput hitting_set_gadget(const HittingSetInstance& hs);

inline constexpr int kMembershipCap = 20;

struct MembershipVerdict {
  bool inside = true;
  AttrSet w;       // first proper subset (by mask) reaching the minimum
  Rational l_min;  // min over proper W of L(W)
};

// L(W) = sum of delta_hat over constraints with X inside W and Y not inside
// W; inside iff every proper subset W has L(W) >= 1. Throws CapExceeded when
// n > 20.
MembershipVerdict check_membership(const Instance& inst,
                                   const std::vector<Rational>& delta_hat);
Rational membership_sum(const Instance& inst,
                        const std::vector<Rational>& delta_hat, AttrSet w);

// True iff at most budget elements meet every set. Throws CapExceeded when
// elements > 20.
bool brute_force_hitting_set(const HittingSetInstance& hs);

struct RandomInstanceParams {
  int n = 4;
  int k = 6;
  int min_x = 0;  // |X| range; simple instances clamp max_x to 1
  int max_x = 2;
  int min_extra = 1;  // |Y \ X| range
  int max_extra = 2;
  int max_cost_numerator = 10;  // costs p/q, 0 <= p <= this
  int max_cost_denominator = 4;  // 1 <= q <= this
  bool simple = false;
  bool acyclic = false;
  bool bounded = true;  // the closure of the empty set is the universe
  uint64_t seed = 1;
};

// Deterministic for a given parameter set. Throws PreconditionError when the
// flags cannot be met (for instance bounded with k * max_extra < n).
Instance random_instance(const RandomInstanceParams& params);

}  // namespace polybound

#endif  // POLYBOUND_REDUCTIONS_H_
