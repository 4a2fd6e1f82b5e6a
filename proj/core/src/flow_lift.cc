#include "polybound/flow_lift.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "polybound/errors.h"

namespace polybound {

namespace {

mpz_class lcm(mpz_class a, const mpz_class& b) {
  mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a;
}

std::string at_vertex(const SimpleFlowGraph& g, int v) {
  return g.vertices[v].to_string();
}

// Pulls paths out of one sink's flow. f is consumed.
std::vector<FlowPath> decompose_one(const SimpleFlowGraph& g, int t,
                                    std::vector<Rational> f,
                                    const Rational& q) {
  const int nv = static_cast<int>(g.vertices.size());
  const int source = g.vertex(AttrSet());
  const int sink = g.vertex(AttrSet::singleton(t));

  std::vector<Rational> net(nv);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (f[e].sign() < 0) {
      throw PreconditionError("negative flow on edge " + std::to_string(e) +
                              " for sink " + std::to_string(t));
    }
    net[g.edges[e].from] -= f[e];
    net[g.edges[e].to] += f[e];
  }
  for (int v = 0; v < nv; ++v) {
    Rational want = v == source ? Rational(-1) : v == sink ? Rational(1) : 0;
    if (net[v] != want) {
      throw PreconditionError("flow to {" + std::to_string(t) +
                              "} does not conserve at " + at_vertex(g, v) +
                              " (net inflow " + net[v].to_string() + ")");
    }
  }

  // Out-edges ordered by head vertex (mask order), then edge index.
  std::vector<std::vector<int>> out(nv);
  for (size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);
  for (auto& list : out) {
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
      return g.edges[a].to < g.edges[b].to;
    });
  }
  auto next_edge = [&](int v) {
    for (int e : out[v]) {
      if (f[e].sign() > 0) return e;
    }
    return -1;
  };

  std::map<std::vector<int>, Rational> found;
  Rational remaining = 1;
  while (remaining.sign() > 0) {
    std::vector<int> walk;
    std::vector<int> position(nv, -1);
    int v = source;
    position[v] = 0;
    while (v != sink) {
      int e = next_edge(v);
      if (e < 0) {
        throw InvariantViolation("flow walk stuck at " + at_vertex(g, v));
      }
      walk.push_back(e);
      int w = g.edges[e].to;
      if (position[w] >= 0) {
        // Cycle: cancel it and start over.
        std::vector<int> cycle(walk.begin() + position[w], walk.end());
        Rational b = f[cycle[0]];
        for (int c : cycle) b = Rational::min(b, f[c]);
        for (int c : cycle) f[c] -= b;
        walk.clear();
        std::fill(position.begin(), position.end(), -1);
        v = source;
        position[v] = 0;
        continue;
      }
      position[w] = static_cast<int>(walk.size());
      v = w;
    }
    Rational b = remaining;
    for (int e : walk) b = Rational::min(b, f[e]);
    for (int e : walk) f[e] -= b;
    remaining -= b;
    found[walk] += b;
  }

  std::vector<FlowPath> paths;
  for (auto& [edges, amount] : found) {
    FlowPath p;
    p.edges = edges;
    p.vertices.push_back(AttrSet());
    for (int e : edges) p.vertices.push_back(g.vertices[g.edges[e].to]);
    p.units = amount * q;
    if (!p.units.is_integer()) {
      throw InvariantViolation("path amount is not a multiple of epsilon");
    }
    paths.push_back(std::move(p));
  }
  std::sort(paths.begin(), paths.end(),
            [](const FlowPath& a, const FlowPath& b) {
              if (a.vertices != b.vertices) return a.vertices < b.vertices;
              return a.edges < b.edges;
            });
  return paths;
}

}  // namespace

PathDecomposition decompose_flow(
    const Instance& inst, const SimpleFlowGraph& g,
    const std::vector<std::vector<Rational>>& flows) {
  if (static_cast<int>(flows.size()) != inst.n()) {
    throw PreconditionError("expected one flow per attribute");
  }
  mpz_class q = 1;
  for (const auto& f : flows) {
    if (f.size() != g.edges.size()) {
      throw PreconditionError("flow vector does not match the graph's edges");
    }
    for (const Rational& v : f) {
      if (!v.is_integer()) q = lcm(q, v.denominator());
    }
  }
  PathDecomposition pd;
  pd.q = Rational(q);
  pd.epsilon = Rational(1) / pd.q;
  for (int t = 1; t <= inst.n(); ++t) {
    pd.paths.push_back(decompose_one(g, t, flows[t - 1], pd.q));
  }
  return pd;
}

PathDecomposition decompose_flow(
    const Instance& inst, const std::vector<std::vector<Rational>>& flows) {
  return decompose_flow(inst, build_graph(inst), flows);
}

DualWitness LiftTrace::replay(const std::vector<Rational>& delta) const {
  DualWitness w;
  w.delta = delta;
  for (const LiftStep& s : steps) {
    auto& m = s.var == LiftStep::Var::kMu ? w.mu : w.sigma;
    Rational& v = m[s.key];
    v += s.change;
    if (v.is_zero()) m.erase(s.key);
  }
  return w;
}

std::string LiftTrace::render() const {
  std::ostringstream os;
  for (const LiftStep& s : steps) {
    os << s.target << ' ' << s.step << ' ';
    if (s.var == LiftStep::Var::kMu) {
      os << "mu " << s.key.second.to_string() << "->" << s.key.first.to_string();
    } else {
      os << "sigma " << s.key.first.to_string() << '|'
         << s.key.second.to_string();
    }
    os << ' ' << (s.change.sign() > 0 ? "+" : "") << s.change << '\n';
  }
  return os.str();
}

namespace {

class Lifter {
 public:
  Lifter(const Instance& inst, const SimpleFlowGraph& g,
         const std::vector<Rational>& delta, const PathDecomposition& pd)
      : inst_(inst), g_(g), pd_(pd) {
    mpz_class q = pd.q.numerator();
    for (const Rational& d : delta) {
      if (d.sign() < 0) throw PreconditionError("negative delta");
      if (!d.is_integer()) q = lcm(q, d.denominator());
    }
    q_ = Rational(q);
    w_.delta = delta;
    ledger_.resize(inst.k());
  }

  LiftResult run() {
    for (int j = 0; j < inst_.k(); ++j) {
      const Rational& d = w_.delta[j];
      if (d.is_zero()) continue;
      add_excess(inst_[j].y, d);
      add_excess(inst_[j].x, -d);
      bump_mu(inst_[j].x, inst_[j].y, d, "init");
      ledger_[j][0] = d;
    }
    for (int i = 0; i < inst_.n(); ++i) {
      target_ = i + 1;
      for (const FlowPath& p : pd_.paths[i]) forward(i, p);
      for (const FlowPath& p : pd_.paths[i]) restore(i, p);
      check_outer(i + 1);
    }
    LiftResult r;
    r.witness = std::move(w_);
    r.trace = std::move(trace_);
    r.chunks = chunks_;
    return r;
  }

 private:
  void fail(const std::string& what) const {
    throw InvariantViolation("lift, sink {" + std::to_string(target_) +
                             "}: " + what);
  }

  void add_excess(AttrSet z, const Rational& v) {
    Rational& e = excess_[z];
    e += v;
    if (e.is_zero()) excess_.erase(z);
  }

  Rational excess(AttrSet z) const {
    auto it = excess_.find(z);
    return it == excess_.end() ? Rational() : it->second;
  }

  bool bad_value(const Rational& v) const {
    return v.sign() < 0 || !(v * q_).is_integer();
  }

  void bump_mu(AttrSet x, AttrSet y, const Rational& c, const char* step) {
    if (!x.proper_subset_of(y)) {
      fail("mu on a non-subset pair " + x.to_string() + "," + y.to_string());
    }
    SetPair key{x, y};
    Rational& v = w_.mu[key];
    v += c;
    if (bad_value(v)) {
      fail("mu " + y.to_string() + "->" + x.to_string() + " = " +
           v.to_string() + " is negative or off the epsilon grid");
    }
    if (v.is_zero()) w_.mu.erase(key);
    add_excess(x, c);
    add_excess(y, -c);
    trace_.steps.push_back({LiftStep::Var::kMu, key, c, target_, step});
  }

  void bump_sigma(AttrSet a, AttrSet b, const Rational& c, const char* step) {
    if (!a.incomparable(b)) {
      fail("sigma on a comparable pair " + a.to_string() + "," + b.to_string());
    }
    if (b < a) std::swap(a, b);
    SetPair key{a, b};
    Rational& v = w_.sigma[key];
    v += c;
    if (bad_value(v)) {
      fail("sigma " + a.to_string() + "|" + b.to_string() + " = " +
           v.to_string() + " is negative or off the epsilon grid");
    }
    if (v.is_zero()) w_.sigma.erase(key);
    add_excess(a & b, c);
    add_excess(a | b, c);
    add_excess(a, -c);
    add_excess(b, -c);
    trace_.steps.push_back({LiftStep::Var::kSigma, key, c, target_, step});
  }

  // Every nonzero excess sits at one of the allowed points.
  void check_support(std::initializer_list<AttrSet> allowed) const {
    for (const auto& [z, v] : excess_) {
      if (std::find(allowed.begin(), allowed.end(), z) == allowed.end()) {
        fail("stray excess " + v.to_string() + " at " + z.to_string());
      }
    }
  }

  void forward(int i, const FlowPath& path) {
    const AttrSet pi = AttrSet::prefix(i);
    const AttrSet pi1 = AttrSet::prefix(i + 1);
    Rational remaining = path.units / pd_.q;
    while (remaining.sign() > 0) {
      // Fix the capacity choice of every delta edge, then move as much as all
      // choices allow in one go.
      std::vector<int> choice(path.edges.size(), -1);
      Rational chunk = remaining;
      for (size_t s = 0; s < path.edges.size(); ++s) {
        const auto& e = g_.edges[path.edges[s]];
        if (e.is_mu()) continue;
        if ((path.vertices[s] | pi) == (path.vertices[s + 1] | pi)) continue;
        const auto& led = ledger_[e.constraint];
        if (led.empty()) {
          fail("no capacity left on constraint " +
               std::to_string(e.constraint + 1));
        }
        choice[s] = led.rbegin()->first;  // largest t
        chunk = Rational::min(chunk, led.rbegin()->second);
      }

      const Rational before_i = excess(pi);
      const Rational before_i1 = excess(pi1);
      for (size_t s = 0; s < path.edges.size(); ++s) {
        const AttrSet a = path.vertices[s];
        const AttrSet b = path.vertices[s + 1];
        const AttrSet ai = a | pi;
        const AttrSet bi = b | pi;
        if (ai == bi) continue;
        const auto& e = g_.edges[path.edges[s]];
        if (e.is_mu()) {
          bump_mu(bi, ai, chunk, "f1");
          continue;
        }
        const int t = choice[s];
        const AttrSet pt = AttrSet::prefix(t);
        const AttrSet at = a | pt;
        const AttrSet bt = b | pt;
        auto& led = ledger_[e.constraint];
        led[t] -= chunk;
        if (led[t].is_zero()) led.erase(t);
        bump_mu(at, bt, -chunk, "f2a");
        if (ai.subset_of(bt)) {
          if (at != ai) bump_mu(at, ai, chunk, "f2a+");
        } else {
          bump_sigma(bt, ai, chunk, "f2b.ii");
          const AttrSet meet = ai & bt;
          if (meet != at) bump_mu(at, meet, chunk, "f2b.iii");
        }
      }
      if (excess(pi) != before_i - chunk) fail("excess at [i] did not drop");
      if (excess(pi1) != before_i1 + chunk) fail("excess at [i+1] did not rise");
      check_support({AttrSet(), pi, pi1});
      remaining -= chunk;
      ++chunks_;
    }
  }

  void restore(int i, const FlowPath& path) {
    const AttrSet pi = AttrSet::prefix(i);
    const AttrSet pi1 = AttrSet::prefix(i + 1);
    const Rational amount = path.units / pd_.q;
    for (size_t s = 0; s < path.edges.size(); ++s) {
      const AttrSet a = path.vertices[s];
      const AttrSet b = path.vertices[s + 1];
      const AttrSet a1 = a | pi1;
      const AttrSet b1 = b | pi1;
      if (a1 == b1) continue;
      const auto& e = g_.edges[path.edges[s]];
      if (e.is_mu()) {
        const AttrSet ai = a | pi;
        const AttrSet bi = b | pi;
        bump_mu(bi, ai, -amount, "r1a");
        if (!a.contains(i + 1)) {
          bump_sigma(ai, b1, amount, "r1b");
        } else if (!b.contains(i + 1)) {
          // [i+1] adds nothing to A here, so the sigma step would pair a set
          // with one of its own subsets; a plain mu edge moves the same flow.
          bump_mu(bi, b1, amount, "r1b'");
        }
      } else {
        bump_mu(a1, b1, amount, "r2");
        ledger_[e.constraint][i + 1] += amount;
      }
    }
    // Each projected path is a closed loop, so the excesses are back where
    // the forward pass left them.
    check_support({AttrSet(), pi, pi1});
  }

  void check_outer(int i) {
    const AttrSet pi = AttrSet::prefix(i);
    if (excess(pi) != 1) fail("excess at [i] is " + excess(pi).to_string());
    if (excess(AttrSet()) != -1) fail("excess at the empty set is not -1");
    check_support({AttrSet(), pi});
    std::map<SetPair, Rational> held;
    for (int j = 0; j < inst_.k(); ++j) {
      const auto& dc = inst_[j];
      Rational sum;
      for (const auto& [t, v] : ledger_[j]) {
        sum += v;
        held[{dc.x | AttrSet::prefix(t), dc.y | AttrSet::prefix(t)}] += v;
      }
      if ((dc.x | pi) != (dc.y | pi) && sum != w_.delta[j]) {
        fail("capacity of constraint " + std::to_string(j + 1) +
             " not restored");
      }
    }
    for (const auto& [key, v] : held) {
      auto it = w_.mu.find(key);
      if (it == w_.mu.end() || it->second < v) {
        fail("mu " + key.second.to_string() + "->" + key.first.to_string() +
             " below its recorded capacity");
      }
    }
  }

  const Instance& inst_;
  const SimpleFlowGraph& g_;
  const PathDecomposition& pd_;
  Rational q_;
  DualWitness w_;
  std::map<AttrSet, Rational> excess_;  // nonzero entries only
  // ledger_[h][t]: part of mu_{X_h + [t], Y_h + [t]} owed to constraint h.
  std::vector<std::map<int, Rational>> ledger_;
  LiftTrace trace_;
  int target_ = 0;
  int chunks_ = 0;
};

}  // namespace

LiftResult lift(const Instance& inst, const std::vector<Rational>& delta,
                const PathDecomposition& paths) {
  if (static_cast<int>(delta.size()) != inst.k()) {
    throw PreconditionError("expected one delta value per constraint");
  }
  SimpleFlowGraph g = build_graph(inst);
  if (static_cast<int>(paths.paths.size()) != inst.n()) {
    throw PreconditionError("decomposition does not match the instance");
  }
  for (const auto& per_sink : paths.paths) {
    for (const FlowPath& p : per_sink) {
      for (int e : p.edges) {
        if (e < 0 || e >= static_cast<int>(g.edges.size())) {
          throw PreconditionError("path edge out of range");
        }
      }
    }
  }
  // Every path must respect the delta capacities, or the lift cannot work.
  for (int t = 1; t <= inst.n(); ++t) {
    std::vector<Rational> use(inst.k());
    for (const FlowPath& p : paths.paths[t - 1]) {
      for (int e : p.edges) {
        if (!g.edges[e].is_mu()) use[g.edges[e].constraint] += p.units / paths.q;
      }
    }
    for (int j = 0; j < inst.k(); ++j) {
      if (use[j] > delta[j]) {
        throw PreconditionError("flow to {" + std::to_string(t) +
                                "} exceeds delta on constraint " +
                                std::to_string(j + 1));
      }
    }
  }
  return Lifter(inst, g, delta, paths).run();
}

LiftResult lift(const Instance& inst, const std::vector<Rational>& delta) {
  if (static_cast<int>(delta.size()) != inst.k()) {
    throw PreconditionError("expected one delta value per constraint");
  }
  SimpleFlowGraph g = build_graph(inst);
  std::vector<std::vector<Rational>> flows;
  for (int t = 1; t <= inst.n(); ++t) {
    MaxFlowResult mf = max_flow(g, delta, t, Rational(1));
    if (mf.value < 1) {
      throw PreconditionError("delta is not feasible: max flow to {" +
                              std::to_string(t) + "} is " +
                              mf.value.to_string());
    }
    flows.push_back(std::move(mf.flow));
  }
  return lift(inst, delta, decompose_flow(inst, g, flows));
}

WitnessVerdict verify_witness(const Instance& inst, const DualWitness& w) {
  if (static_cast<int>(w.delta.size()) != inst.k()) {
    throw PreconditionError("witness has " + std::to_string(w.delta.size()) +
                            " delta values for " + std::to_string(inst.k()) +
                            " constraints");
  }
  const AttrSet u = inst.universe();
  for (const auto& [key, v] : w.sigma) {
    if (!key.first.subset_of(u) || !key.second.subset_of(u) ||
        !key.first.incomparable(key.second)) {
      throw PreconditionError("sigma key " + key.first.to_string() + "|" +
                              key.second.to_string() +
                              " is not an incomparable pair");
    }
  }
  for (const auto& [key, v] : w.mu) {
    if (!key.second.subset_of(u) || !key.first.proper_subset_of(key.second)) {
      throw PreconditionError("mu key " + key.second.to_string() + "->" +
                              key.first.to_string() + " is not a subset pair");
    }
  }

  WitnessVerdict out;
  for (int i = 0; i < inst.k(); ++i) {
    if (w.delta[i].sign() < 0) {
      out.valid = false;
      out.negative = "delta " + std::to_string(i + 1);
      return out;
    }
  }
  for (const auto& [key, v] : w.sigma) {
    if (v.sign() < 0) {
      out.valid = false;
      out.negative = "sigma " + key.first.to_string() + "|" +
                     key.second.to_string();
      return out;
    }
  }
  for (const auto& [key, v] : w.mu) {
    if (v.sign() < 0) {
      out.valid = false;
      out.negative =
          "mu " + key.second.to_string() + "->" + key.first.to_string();
      return out;
    }
  }
  for (const auto& [z, e] : compute_excess(inst, w)) {
    Rational need = z == u ? Rational(1) : z.empty() ? Rational(-1) : 0;
    if (e < need) {
      out.valid = false;
      out.z = z;
      out.excess = e;
      out.required = need;
      return out;
    }
  }
  return out;
}

}  // namespace polybound
