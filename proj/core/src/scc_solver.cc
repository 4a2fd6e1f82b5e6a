#include "polybound/scc_solver.h"

#include "polybound/errors.h"

namespace polybound {

uint64_t local_mask(AttrSet v, AttrSet x) {
  uint64_t out = 0;
  int r = 0;
  for (int a : v) {
    if (x.contains(a)) out |= uint64_t{1} << r;
    ++r;
  }
  return out;
}

AttrSet from_local_mask(AttrSet v, uint64_t local) {
  AttrSet out;
  int r = 0;
  for (int a : v) {
    if ((local >> r) & 1) out = out.with(a);
    ++r;
  }
  return out;
}

Rational SemimodularWitness::component_value(int j, AttrSet x) const {
  return tables[j][local_mask(components[j], x)];
}

Rational SemimodularWitness::value(AttrSet x) const {
  Rational s;
  for (int j = 0; j < static_cast<int>(components.size()); ++j) {
    s += component_value(j, x);
  }
  return s;
}

std::string check_semimodular(const Instance& inst,
                              const SemimodularWitness& w) {
  if (w.components.size() != w.tables.size()) {
    return "component and table counts differ";
  }
  AttrSet seen;
  for (int j = 0; j < static_cast<int>(w.components.size()); ++j) {
    const AttrSet v = w.components[j];
    if (seen.intersects(v)) return "components overlap";
    seen |= v;
    if (w.tables[j].size() != (uint64_t{1} << v.size())) {
      return "table " + std::to_string(j + 1) + " has the wrong size";
    }
    std::string why = check_polymatroid(v.size(), w.tables[j]);
    if (!why.empty()) {
      return "component " + v.to_string() + ": " + why;
    }
  }
  if (seen != inst.universe()) return "components do not cover the universe";
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    if (w.value(dc.y) - w.value(dc.x) > dc.cost) {
      return "difference constraint " + std::to_string(i + 1) + " violated";
    }
  }
  return {};
}

void check_component_cap(const SccDecomposition& d, int cap) {
  if (d.max_component_size() > cap) {
    throw CapExceeded("largest strongly connected component has " +
                      std::to_string(d.max_component_size()) +
                      " attributes, over the component cap of " +
                      std::to_string(cap));
  }
}

namespace {

std::string tag(int j) { return std::to_string(j + 1); }

}  // namespace

LinearProgram build_lp_PSCC(const Instance& inst, int cap) {
  SccDecomposition d = scc_decompose(inst);
  check_component_cap(d, cap);
  LinearProgram lp(Sense::kMaximize);
  std::vector<int> base;  // variable id of h_j(empty set)
  for (int j = 0; j < d.size(); ++j) {
    const AttrSet v = d.components[j];
    const uint64_t size = uint64_t{1} << v.size();
    base.push_back(lp.num_variables());
    for (uint64_t m = 0; m < size; ++m) {
      lp.add_variable("h" + tag(j) + from_local_mask(v, m).to_string());
    }
    lp.set_objective(base[j] + static_cast<int>(size - 1), 1);
    lp.set_objective(base[j], -1);
  }
  for (int j = 0; j < d.size(); ++j) {
    const AttrSet v = d.components[j];
    const uint64_t size = uint64_t{1} << v.size();
    auto var = [&](uint64_t m) { return base[j] + static_cast<int>(m); };
    for (uint64_t a = 0; a < size; ++a) {
      for (uint64_t b = a + 1; b < size; ++b) {
        if ((a & b) == a || (a & b) == b) continue;
        lp.add_row("sub" + tag(j) + from_local_mask(v, a).to_string() +
                       from_local_mask(v, b).to_string(),
                   {{var(a | b), 1}, {var(a & b), 1}, {var(a), -1}, {var(b), -1}},
                   Relation::kLessEqual, 0);
      }
    }
    for (uint64_t b = 0; b < size; ++b) {
      for_each_subset(AttrSet::from_mask(b), [&](AttrSet x) {
        uint64_t a = x.mask();
        if (a == b) return;
        lp.add_row("mono" + tag(j) + from_local_mask(v, a).to_string() +
                       from_local_mask(v, b).to_string(),
                   {{var(a), 1}, {var(b), -1}}, Relation::kLessEqual, 0);
      });
    }
  }
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    std::vector<LpTerm> terms;
    for (int j = 0; j < d.size(); ++j) {
      const AttrSet v = d.components[j];
      if ((dc.x & v) == (dc.y & v)) continue;
      terms.push_back({base[j] + static_cast<int>(local_mask(v, dc.y)), 1});
      terms.push_back({base[j] + static_cast<int>(local_mask(v, dc.x)), -1});
    }
    lp.add_row("diff" + std::to_string(i + 1), std::move(terms),
               Relation::kLessEqual, dc.cost);
  }
  return lp;
}

namespace {

// Rows of one component's lattice, indexed by local mask.
struct ComponentRows {
  AttrSet v;
  std::vector<std::vector<LpTerm>> rows;
};

std::vector<ComponentRows> delta_rows(const Instance& inst,
                                      const SccDecomposition& d,
                                      LinearProgram* lp) {
  std::vector<ComponentRows> out;
  for (const AttrSet v : d.components) {
    out.push_back({v, std::vector<std::vector<LpTerm>>(uint64_t{1} << v.size())});
  }
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    int id = lp->add_variable("delta" + std::to_string(i + 1));
    lp->set_objective(id, dc.cost);
    for (ComponentRows& c : out) {
      if ((dc.x & c.v) == (dc.y & c.v)) continue;
      c.rows[local_mask(c.v, dc.y)].push_back({id, 1});
      c.rows[local_mask(c.v, dc.x)].push_back({id, -1});
    }
  }
  return out;
}

void add_excess_rows(LinearProgram* lp, std::vector<ComponentRows>* comps,
                     std::vector<int>* first_row) {
  for (int j = 0; j < static_cast<int>(comps->size()); ++j) {
    ComponentRows& c = (*comps)[j];
    const uint64_t size = c.rows.size();
    if (first_row != nullptr) first_row->push_back(lp->num_rows());
    for (uint64_t z = 0; z < size; ++z) {
      Rational rhs = z == size - 1 ? Rational(1)
                                   : (z == 0 ? Rational(-1) : Rational(0));
      lp->add_row("excess" + tag(j) + from_local_mask(c.v, z).to_string(),
                  std::move(c.rows[z]), Relation::kGreaterEqual, rhs);
    }
  }
}

}  // namespace

LinearProgram build_lp_DSCC(const Instance& inst, int cap) {
  SccDecomposition d = scc_decompose(inst);
  check_component_cap(d, cap);
  LinearProgram lp(Sense::kMinimize);
  std::vector<ComponentRows> comps = delta_rows(inst, d, &lp);
  for (int j = 0; j < d.size(); ++j) {
    ComponentRows& c = comps[j];
    const uint64_t size = c.rows.size();
    for (uint64_t a = 0; a < size; ++a) {
      for (uint64_t b = a + 1; b < size; ++b) {
        if ((a & b) == a || (a & b) == b) continue;
        int id = lp.add_variable("sigma" + tag(j) +
                                 from_local_mask(c.v, a).to_string() + "|" +
                                 from_local_mask(c.v, b).to_string());
        c.rows[a & b].push_back({id, 1});
        c.rows[a | b].push_back({id, 1});
        c.rows[a].push_back({id, -1});
        c.rows[b].push_back({id, -1});
      }
    }
    for (uint64_t b = 0; b < size; ++b) {
      for_each_subset(AttrSet::from_mask(b), [&](AttrSet x) {
        uint64_t a = x.mask();
        if (a == b) return;
        int id = lp.add_variable("mu" + tag(j) +
                                 from_local_mask(c.v, a).to_string() + "<-" +
                                 from_local_mask(c.v, b).to_string());
        c.rows[a].push_back({id, 1});
        c.rows[b].push_back({id, -1});
      });
    }
  }
  add_excess_rows(&lp, &comps, nullptr);
  return lp;
}

SccResult scc_bound(const Instance& inst, int cap) {
  SccResult result;
  result.decomposition = scc_decompose(inst);
  const SccDecomposition& d = result.decomposition;
  check_component_cap(d, cap);
  static_cast<BoundResult&>(result) = closure_unbounded(inst);
  if (!result.bounded) return result;

  // Elemental hyperedges only: per component, mu (V - a, V) and sigma over
  // (S + a, S + b).
  LinearProgram lp(Sense::kMinimize);
  std::vector<ComponentRows> comps = delta_rows(inst, d, &lp);
  for (int j = 0; j < d.size(); ++j) {
    ComponentRows& c = comps[j];
    const int width = c.v.size();
    const uint64_t full = c.rows.size() - 1;
    for (int a = 0; a < width; ++a) {
      uint64_t rest = full & ~(uint64_t{1} << a);
      int id = lp.add_variable("mu" + tag(j) + "_" + std::to_string(a));
      c.rows[rest].push_back({id, 1});
      c.rows[full].push_back({id, -1});
    }
    for (int a = 0; a < width; ++a) {
      for (int b = a + 1; b < width; ++b) {
        uint64_t ab = (uint64_t{1} << a) | (uint64_t{1} << b);
        for_each_subset(AttrSet::from_mask(full & ~ab), [&](AttrSet s) {
          uint64_t m = s.mask();
          int id = lp.add_variable("sigma" + tag(j) + "_" +
                                   std::to_string(lp.num_variables()));
          c.rows[m].push_back({id, 1});
          c.rows[m | ab].push_back({id, 1});
          c.rows[m | (uint64_t{1} << a)].push_back({id, -1});
          c.rows[m | (uint64_t{1} << b)].push_back({id, -1});
        });
      }
    }
  }
  std::vector<int> first_row;
  add_excess_rows(&lp, &comps, &first_row);

  LpSolution sol = solve(lp, {.float_warm_start = true});
  result.pivots = sol.pivots;
  result.lp_rows = lp.num_rows();
  result.lp_variables = lp.num_variables();
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(std::string("projected program ended ") +
                             to_string(sol.status) + " on a bounded instance");
  }
  result.value = sol.value;
  SemimodularWitness& w = result.witness;
  w.components = d.components;
  for (int j = 0; j < d.size(); ++j) {
    const uint64_t size = uint64_t{1} << d.components[j].size();
    const Rational& base = sol.dual[first_row[j]];
    std::vector<Rational> table(size);
    for (uint64_t m = 0; m < size; ++m) {
      table[m] = sol.dual[first_row[j] + static_cast<int>(m)] - base;
    }
    w.tables.push_back(std::move(table));
  }
  return result;
}

}  // namespace polybound
