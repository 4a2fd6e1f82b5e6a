#ifndef POLYBOUND_CLASSIFY_H_
#define POLYBOUND_CLASSIFY_H_

#include <utility>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/instance.h"

namespace polybound {

struct ConstraintTags {
  bool simple = false;                 // |X| <= 1
  bool cardinality = false;            // |X| == 0
  bool functional_dependency = false;  // cost == 0
  bool general = false;                // not simple
};

struct InstanceClass {
  bool is_simple = true;
  bool is_acyclic = true;
  std::vector<ConstraintTags> tags;
};

// Edge u -> v iff some constraint has u in X and v in Y \ X.
class DependencyDigraph {
 public:
  explicit DependencyDigraph(int n) : n_(n), out_(n + 1) {}

  int n() const { return n_; }
  void add_edge(int u, int v) { out_[u] = out_[u].with(v); }
  bool has_edge(int u, int v) const { return out_[u].contains(v); }
  AttrSet successors(int u) const { return out_[u]; }
  // Sorted by (u, v).
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_;
  std::vector<AttrSet> out_;  // indexed 1..n
};

struct SccDecomposition {
  // Topologically sorted: every edge between components goes from a lower to
  // a higher index. Ties are broken by the smallest contained attribute.
  std::vector<AttrSet> components;

  int size() const { return static_cast<int>(components.size()); }
  int component_of(int attribute) const;
  int max_component_size() const;
};

ConstraintTags tag_constraint(const DifferenceConstraint& dc);
InstanceClass classify(const Instance& inst);
DependencyDigraph dependency_digraph(const Instance& inst);
SccDecomposition scc_decompose(const Instance& inst);

// Least S containing every Y_i whose X_i lies in S, starting from the empty
// set. The polymatroid and coverage bounds are finite exactly when this is
// the whole universe.
AttrSet closure_from_empty(const Instance& inst);

}  // namespace polybound

#endif  // POLYBOUND_CLASSIFY_H_
