#ifndef POLYBOUND_WITNESS_IO_H_
#define POLYBOUND_WITNESS_IO_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/oracle.h"
#include "polybound/rational.h"
#include "polybound/scc_solver.h"

namespace polybound {

// Witness files use one assignment per line:
//   delta 1 = 1/3            (constraint index, 1-based)
//   sigma {1}|{2} = 1/2      (incomparable pair)
//   mu {1,2}->{1} = 1        (flow from the larger set down to the smaller)
//   h {1,3} = 7/2            (polymatroid table entry)
//   lambda {2} = 1           (coverage weight)
//   z 1 = 2                  (modular weight of an attribute)
//   component 1 {1,2}        (a strongly connected component)
//   hc 1 {1} = 3/2           (entry of that component's table)
// Blank lines and # comments are ignored.

std::string render_delta(const std::vector<Rational>& delta);
// delta lines for every constraint, then nonzero sigma and mu entries.
std::string render_dual_witness(const DualWitness& w);
std::string render_polymatroid(int n, const std::vector<Rational>& h);
std::string render_coverage(const std::map<AttrSet, Rational>& lambda);
std::string render_modular(const std::vector<Rational>& z);
std::string render_semimodular(const SemimodularWitness& w);

struct WitnessFile {
  std::map<int, Rational> delta;  // keyed by 1-based constraint index
  std::map<SetPair, Rational> sigma;  // smaller mask first
  std::map<SetPair, Rational> mu;     // (X, Y) with X the smaller set
  std::map<AttrSet, Rational> h;
  std::map<AttrSet, Rational> lambda;
  std::map<int, Rational> z;
  std::map<int, AttrSet> components;  // 1-based
  std::map<std::pair<int, AttrSet>, Rational> hc;
};

// Attributes must lie in 1..n. Repeated keys are a ParseError.
WitnessFile parse_witness(std::istream& in, int n);
WitnessFile parse_witness(std::string_view text, int n);
WitnessFile read_witness_file(const std::string& path, int n);

// Missing entries are zero. Throws PreconditionError for an index above k.
std::vector<Rational> delta_vector(const WitnessFile& f, int k);
DualWitness to_dual_witness(const WitnessFile& f, int k);
// Table indexed by mask; missing entries are zero.
std::vector<Rational> polymatroid_table(const WitnessFile& f, int n);
std::vector<Rational> modular_vector(const WitnessFile& f, int n);
// Throws PreconditionError when the components or tables are incomplete.
SemimodularWitness semimodular_witness(const WitnessFile& f);

}  // namespace polybound

#endif  // POLYBOUND_WITNESS_IO_H_
