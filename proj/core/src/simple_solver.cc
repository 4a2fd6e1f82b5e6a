#include "polybound/simple_solver.h"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "polybound/classify.h"
#include "polybound/errors.h"

namespace polybound {

int SimpleFlowGraph::vertex(AttrSet s) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
  if (it == vertices.end() || *it != s) return -1;
  return static_cast<int>(it - vertices.begin());
}

int SimpleFlowGraph::num_delta_edges() const {
  int count = 0;
  for (const Edge& e : edges) count += e.is_mu() ? 0 : 1;
  return count;
}

namespace {

void require_simple(const Instance& inst) {
  for (int i = 0; i < inst.k(); ++i) {
    if (inst[i].x.size() > 1) {
      throw PreconditionError("constraint " + std::to_string(i + 1) +
                              " has |X| > 1; the instance is not simple");
    }
  }
}

mpz_class lcm_of_denominators(const std::vector<Rational>& values,
                              const Rational& extra) {
  mpz_class l = extra.denominator();
  for (const Rational& v : values) {
    if (v.is_integer()) continue;
    mpz_class d = v.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace

SimpleFlowGraph build_graph(const Instance& inst) {
  require_simple(inst);
  SimpleFlowGraph g;
  g.n = inst.n();
  std::set<AttrSet> vs;
  vs.insert(AttrSet());
  for (int a = 1; a <= inst.n(); ++a) vs.insert(AttrSet::singleton(a));
  for (const DifferenceConstraint& dc : inst.constraints()) vs.insert(dc.y);
  g.vertices.assign(vs.begin(), vs.end());
  for (int i = 0; i < inst.k(); ++i) {
    g.edges.push_back({g.vertex(inst[i].x), g.vertex(inst[i].y), i});
  }
  const int nv = static_cast<int>(g.vertices.size());
  for (int from = 0; from < nv; ++from) {
    for (int to = 0; to < nv; ++to) {
      const AttrSet& y = g.vertices[from];
      const AttrSet& x = g.vertices[to];
      if (x.size() <= 1 && x.proper_subset_of(y)) g.edges.push_back({from, to, -1});
    }
  }
  return g;
}

MaxFlowResult max_flow(const SimpleFlowGraph& g,
                       const std::vector<Rational>& capacities, int t,
                       const Rational& limit) {
  if (t < 1 || t > g.n) {
    throw PreconditionError("sink {" + std::to_string(t) + "} is not in the graph");
  }
  const int source = g.vertex(AttrSet());
  const int sink = g.vertex(AttrSet::singleton(t));
  const int nv = static_cast<int>(g.vertices.size());
  const int ne = static_cast<int>(g.edges.size());
  for (const SimpleFlowGraph::Edge& e : g.edges) {
    if (!e.is_mu() && (e.constraint >= static_cast<int>(capacities.size()) ||
                       capacities[e.constraint].sign() < 0)) {
      throw PreconditionError("capacities must be nonnegative, one per constraint");
    }
  }

  // Work in integers: every capacity times a common denominator. Mu edges
  // are uncapacitated and never constrain an augmenting path.
  mpz_class scale = lcm_of_denominators(capacities, limit);
  std::vector<mpz_class> cap(ne), flow(ne);
  for (int e = 0; e < ne; ++e) {
    const SimpleFlowGraph::Edge& edge = g.edges[e];
    if (edge.is_mu()) continue;
    mpq_class c = capacities[edge.constraint].to_mpq() * scale;
    cap[e] = c.get_num();
  }
  bool limited = limit.sign() > 0;
  mpz_class remaining;
  if (limited) remaining = mpq_class(limit.to_mpq() * scale).get_num();

  // adjacency: (edge, +1 forward | -1 backward), in edge order
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e = 0; e < ne; ++e) {
    adj[g.edges[e].from].push_back({e, 1});
    adj[g.edges[e].to].push_back({e, -1});
  }
  auto residual_positive = [&](int e, int dir) {
    if (dir < 0) return sgn(flow[e]) > 0;
    return g.edges[e].is_mu() || flow[e] < cap[e];
  };

  mpz_class total = 0;
  std::vector<std::pair<int, int>> via(nv);
  while (!limited || sgn(remaining) > 0) {
    std::vector<char> seen(nv, 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
      int u = queue.front();
      queue.pop_front();
      for (auto [e, dir] : adj[u]) {
        int w = dir > 0 ? g.edges[e].to : g.edges[e].from;
        if (seen[w] || !residual_positive(e, dir)) continue;
        seen[w] = 1;
        via[w] = {e, dir};
        queue.push_back(w);
      }
    }
    if (!seen[sink]) break;

    bool bounded = limited;
    mpz_class push = remaining;
    for (int w = sink; w != source;) {
      auto [e, dir] = via[w];
      if (dir < 0 || !g.edges[e].is_mu()) {
        const mpz_class r = dir < 0 ? flow[e] : mpz_class(cap[e] - flow[e]);
        if (!bounded || r < push) push = r;
        bounded = true;
      }
      w = dir > 0 ? g.edges[e].from : g.edges[e].to;
    }
    if (!bounded) {
      throw InvariantViolation("augmenting path of unbounded capacity");
    }
    for (int w = sink; w != source;) {
      auto [e, dir] = via[w];
      if (dir > 0) {
        flow[e] += push;
      } else {
        flow[e] -= push;
      }
      w = dir > 0 ? g.edges[e].from : g.edges[e].to;
    }
    total += push;
    if (limited) remaining -= push;
  }

  MaxFlowResult result;
  result.value = Rational(mpq_class(total, scale));
  result.flow.resize(ne);
  for (int e = 0; e < ne; ++e) {
    if (sgn(flow[e]) != 0) result.flow[e] = Rational(mpq_class(flow[e], scale));
  }
  std::vector<char> reach(nv, 0);
  std::deque<int> queue{source};
  reach[source] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto [e, dir] : adj[u]) {
      int w = dir > 0 ? g.edges[e].to : g.edges[e].from;
      if (reach[w] || !residual_positive(e, dir)) continue;
      reach[w] = 1;
      queue.push_back(w);
    }
  }
  result.sink_side.resize(nv);
  for (int v = 0; v < nv; ++v) result.sink_side[v] = reach[v] ? 0 : 1;
  return result;
}

Rational covering_sum(const Instance& inst, const std::vector<Rational>& delta,
                      AttrSet v) {
  Rational s;
  for (int i = 0; i < inst.k(); ++i) {
    if (!inst[i].x.intersects(v) && inst[i].y.intersects(v)) s += delta[i];
  }
  return s;
}

SeparationVerdict separate(const Instance& inst,
                           const std::vector<Rational>& delta) {
  return separate(inst, build_graph(inst), delta);
}

SeparationVerdict separate(const Instance& inst, const SimpleFlowGraph& g,
                           const std::vector<Rational>& delta) {
  if (static_cast<int>(delta.size()) != inst.k()) {
    throw PreconditionError("delta must have one entry per constraint");
  }
  for (const Rational& d : delta) {
    if (d.sign() < 0) throw PreconditionError("delta must be nonnegative");
  }
  SeparationVerdict verdict;
  for (int t = 1; t <= inst.n(); ++t) {
    MaxFlowResult mf = max_flow(g, delta, t, Rational(1));
    if (mf.value >= Rational(1)) continue;
    AttrSet v;
    for (int a = 1; a <= inst.n(); ++a) {
      if (mf.sink_side[g.vertex(AttrSet::singleton(a))]) v = v.with(a);
    }
    verdict.feasible = false;
    verdict.v = v;
    verdict.lhs = covering_sum(inst, delta, v);
    verdict.sink = t;
    if (v.size() == 0 || verdict.lhs >= Rational(1)) {
      throw InvariantViolation("min cut did not yield a violated covering row");
    }
    return verdict;
  }
  return verdict;
}

SimpleResult simple_bound(const Instance& inst) {
  require_simple(inst);
  SimpleResult result;
  static_cast<BoundResult&>(result) = closure_unbounded(inst);
  result.graph = build_graph(inst);
  if (!result.bounded) return result;

  const int n = inst.n();
  const int k = inst.k();
  LinearProgram lp(Sense::kMinimize);
  for (int i = 0; i < k; ++i) {
    int id = lp.add_variable("delta" + std::to_string(i + 1));
    lp.set_objective(id, inst[i].cost);
  }
  auto covering_row = [&](AttrSet v) {
    SeparatedRow row;
    for (int i = 0; i < k; ++i) {
      if (!inst[i].x.intersects(v) && inst[i].y.intersects(v)) {
        row.terms.push_back({i, 1});
      }
    }
    row.rel = Relation::kGreaterEqual;
    row.rhs = 1;
    return row;
  };
  std::vector<AttrSet> cut_sets;
  for (int t = 1; t <= n; ++t) {
    AttrSet v = AttrSet::singleton(t);
    SeparatedRow row = covering_row(v);
    lp.add_row("cover" + v.to_string(), row.terms, row.rel, row.rhs);
    cut_sets.push_back(v);
  }

  // One violated row per sink whose flow falls short.
  RowSeparator separator = [&](const std::vector<Rational>& delta) {
    std::vector<SeparatedRow> rows;
    std::set<AttrSet> seen;
    for (int t = 1; t <= n; ++t) {
      MaxFlowResult mf = max_flow(result.graph, delta, t, Rational(1));
      if (mf.value >= Rational(1)) continue;
      AttrSet v;
      for (int a = 1; a <= n; ++a) {
        if (mf.sink_side[result.graph.vertex(AttrSet::singleton(a))]) v = v.with(a);
      }
      if (!seen.insert(v).second) continue;
      rows.push_back(covering_row(v));
      cut_sets.push_back(v);
    }
    return rows;
  };

  SeparationStats stats;
  LpSolution sol = solve_with_separation(&lp, separator, &stats);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(std::string("covering program ended ") +
                             to_string(sol.status) + " on a bounded instance");
  }
  result.value = sol.value;
  result.delta = sol.primal;
  result.rounds = stats.rounds;
  result.pivots = sol.pivots;
  result.cut_sets = std::move(cut_sets);
  result.cut_duals = sol.dual;

  for (int t = 1; t <= n; ++t) {
    MaxFlowResult mf = max_flow(result.graph, result.delta, t, Rational(1));
    if (mf.value != Rational(1)) {
      throw InvariantViolation("optimal delta does not carry a unit flow to {" +
                               std::to_string(t) + "}");
    }
    result.flows.push_back(std::move(mf.flow));
  }
  return result;
}

LinearProgram build_lp_DprimeS(const Instance& inst) {
  SimpleFlowGraph g = build_graph(inst);
  const int n = inst.n();
  const int k = inst.k();
  const int nv = static_cast<int>(g.vertices.size());
  LinearProgram lp(Sense::kMinimize);
  for (int i = 0; i < k; ++i) {
    int id = lp.add_variable("delta" + std::to_string(i + 1));
    lp.set_objective(id, inst[i].cost);
  }
  for (int t = 1; t <= n; ++t) {
    std::vector<std::vector<LpTerm>> excess(nv);
    const std::string tag = "_" + std::to_string(t);
    for (const SimpleFlowGraph::Edge& e : g.edges) {
      std::string name = e.is_mu()
                             ? "mu" + g.vertices[e.to].to_string() + "<-" +
                                   g.vertices[e.from].to_string() + tag
                             : "f" + std::to_string(e.constraint + 1) + tag;
      int id = lp.add_variable(name);
      excess[e.to].push_back({id, 1});
      excess[e.from].push_back({id, -1});
      if (!e.is_mu()) {
        lp.add_row("cap" + std::to_string(e.constraint + 1) + tag,
                   {{id, 1}, {e.constraint, -1}}, Relation::kLessEqual, 0);
      }
    }
    const int sink = g.vertex(AttrSet::singleton(t));
    const int source = g.vertex(AttrSet());
    for (int v = 0; v < nv; ++v) {
      Rational rhs = v == sink ? Rational(1) : (v == source ? Rational(-1) : Rational(0));
      lp.add_row("excess" + g.vertices[v].to_string() + tag, std::move(excess[v]),
                 Relation::kGreaterEqual, rhs);
    }
  }
  return lp;
}

}  // namespace polybound
