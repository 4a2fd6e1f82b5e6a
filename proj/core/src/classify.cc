#include "polybound/classify.h"

#include <algorithm>
#include <functional>
#include <queue>

namespace polybound {

std::vector<std::pair<int, int>> DependencyDigraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= n_; ++u) {
    for (int v : out_[u]) out.emplace_back(u, v);
  }
  return out;
}

int SccDecomposition::component_of(int attribute) const {
  for (int j = 0; j < size(); ++j) {
    if (components[j].contains(attribute)) return j;
  }
  return -1;
}

int SccDecomposition::max_component_size() const {
  int best = 0;
  for (AttrSet c : components) best = std::max(best, c.size());
  return best;
}

ConstraintTags tag_constraint(const DifferenceConstraint& dc) {
  ConstraintTags t;
  t.simple = dc.x.size() <= 1;
  t.cardinality = dc.x.empty();
  t.functional_dependency = dc.cost.is_zero();
  t.general = !t.simple;
  return t;
}

DependencyDigraph dependency_digraph(const Instance& inst) {
  DependencyDigraph g(inst.n());
  for (const DifferenceConstraint& dc : inst.constraints()) {
    AttrSet heads = dc.y - dc.x;
    for (int u : dc.x) {
      for (int v : heads) g.add_edge(u, v);
    }
  }
  return g;
}

SccDecomposition scc_decompose(const Instance& inst) {
  const int n = inst.n();
  DependencyDigraph g = dependency_digraph(inst);

  // Tarjan's algorithm.
  std::vector<int> index(n + 1, -1), low(n + 1, 0), comp(n + 1, -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(n + 1, false);
  std::vector<AttrSet> found;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : g.successors(v)) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      AttrSet c;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = static_cast<int>(found.size());
        c = c.with(w);
      } while (w != v);
      found.push_back(c);
    }
  };
  for (int v = 1; v <= n; ++v) {
    if (index[v] < 0) visit(v);
  }

  // Kahn's algorithm on the condensation, smallest attribute first.
  const int h = static_cast<int>(found.size());
  std::vector<std::vector<int>> succ(h);
  std::vector<int> indegree(h, 0);
  for (auto [u, v] : g.edges()) {
    int a = comp[u], b = comp[v];
    if (a == b) continue;
    if (std::find(succ[a].begin(), succ[a].end(), b) == succ[a].end()) {
      succ[a].push_back(b);
      ++indegree[b];
    }
  }
  using Entry = std::pair<int, int>;  // (min attribute, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> ready;
  for (int c = 0; c < h; ++c) {
    if (indegree[c] == 0) ready.emplace(found[c].min_element(), c);
  }
  SccDecomposition out;
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    out.components.push_back(found[c]);
    for (int d : succ[c]) {
      if (--indegree[d] == 0) ready.emplace(found[d].min_element(), d);
    }
  }
  return out;
}

InstanceClass classify(const Instance& inst) {
  InstanceClass cls;
  for (const DifferenceConstraint& dc : inst.constraints()) {
    cls.tags.push_back(tag_constraint(dc));
    if (!cls.tags.back().simple) cls.is_simple = false;
  }
  SccDecomposition scc = scc_decompose(inst);
  cls.is_acyclic = scc.max_component_size() <= 1;
  // A self-loop is impossible: v in Y \ X and u in X are never equal.
  return cls;
}

AttrSet closure_from_empty(const Instance& inst) {
  AttrSet s;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const DifferenceConstraint& dc : inst.constraints()) {
      if (dc.x.subset_of(s) && !dc.y.subset_of(s)) {
        s |= dc.y;
        grew = true;
      }
    }
  }
  return s;
}

}  // namespace polybound
