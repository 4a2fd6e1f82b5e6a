#include "oracles.h"

#include <algorithm>
#include <string>

namespace polybound::testing {

namespace {

mpq_class q(const Rational& r) { return r.to_mpq(); }

class Tableau {
 public:
  Tableau(int rows, int cols) : a_(rows, std::vector<mpq_class>(cols)),
                                rhs_(rows), basis_(rows, -1) {}

  std::vector<std::vector<mpq_class>>& a() { return a_; }
  std::vector<mpq_class>& rhs() { return rhs_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    mpq_class p = a_[r][c];
    for (mpq_class& v : a_[r]) v /= p;
    rhs_[r] /= p;
    for (size_t i = 0; i < a_.size(); ++i) {
      if (static_cast<int>(i) == r || a_[i][c] == 0) continue;
      mpq_class f = a_[i][c];
      for (size_t j = 0; j < a_[i].size(); ++j) {
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  // Maximizes cost over the columns marked allowed. Returns false when
  // unbounded.
  bool maximize(const std::vector<mpq_class>& cost,
                const std::vector<char>& allowed) {
    const int cols = static_cast<int>(cost.size());
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (!allowed[j]) continue;
        mpq_class reduced = cost[j];
        for (size_t i = 0; i < a_.size(); ++i) {
          if (a_[i][j] != 0) reduced -= cost[basis_[i]] * a_[i][j];
        }
        if (reduced > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      mpq_class best;
      for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        mpq_class ratio = rhs_[i] / a_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::vector<std::vector<mpq_class>> a_;
  std::vector<mpq_class> rhs_;
  std::vector<int> basis_;
};

}  // namespace

DenseResult dense_solve(const LinearProgram& lp) {
  const int nv = lp.num_variables();
  const int m = lp.num_rows();
  // Normalize to nonnegative right-hand sides.
  std::vector<std::vector<mpq_class>> rows(m, std::vector<mpq_class>(nv));
  std::vector<mpq_class> rhs(m);
  std::vector<Relation> rel(m);
  for (int r = 0; r < m; ++r) {
    const LpRow& row = lp.row(r);
    for (const LpTerm& t : row.terms) rows[r][t.var] += q(t.coef);
    rhs[r] = q(row.rhs);
    rel[r] = row.rel;
    if (rhs[r] < 0) {
      for (mpq_class& v : rows[r]) v = -v;
      rhs[r] = -rhs[r];
      if (rel[r] == Relation::kLessEqual) {
        rel[r] = Relation::kGreaterEqual;
      } else if (rel[r] == Relation::kGreaterEqual) {
        rel[r] = Relation::kLessEqual;
      }
    }
  }
  int slack_count = 0;
  int art_count = 0;
  for (int r = 0; r < m; ++r) {
    if (rel[r] != Relation::kEqual) ++slack_count;
    if (rel[r] != Relation::kLessEqual) ++art_count;
  }
  const int cols = nv + slack_count + art_count;
  Tableau t(m, cols);
  std::vector<char> is_art(cols, 0);
  int next_slack = nv;
  int next_art = nv + slack_count;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < nv; ++j) t.a()[r][j] = rows[r][j];
    t.rhs()[r] = rhs[r];
    if (rel[r] == Relation::kLessEqual) {
      t.a()[r][next_slack] = 1;
      t.basis()[r] = next_slack++;
    } else {
      if (rel[r] == Relation::kGreaterEqual) t.a()[r][next_slack++] = -1;
      t.a()[r][next_art] = 1;
      is_art[next_art] = 1;
      t.basis()[r] = next_art++;
    }
  }

  DenseResult out;
  std::vector<char> all(cols, 1);
  if (art_count > 0) {
    std::vector<mpq_class> phase1(cols);
    for (int j = 0; j < cols; ++j) {
      if (is_art[j]) phase1[j] = -1;
    }
    t.maximize(phase1, all);
    mpq_class infeas;
    for (int r = 0; r < m; ++r) {
      if (is_art[t.basis()[r]]) infeas += t.rhs()[r];
    }
    if (infeas > 0) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    for (int r = 0; r < m; ++r) {
      if (!is_art[t.basis()[r]]) continue;
      for (int j = 0; j < cols; ++j) {
        if (!is_art[j] && t.a()[r][j] != 0) {
          t.pivot(r, j);
          break;
        }
      }
    }
  }
  std::vector<mpq_class> cost(cols);
  const bool minimize = lp.sense() == Sense::kMinimize;
  for (int j = 0; j < nv; ++j) {
    cost[j] = q(lp.objective()[j]);
    if (minimize) cost[j] = -cost[j];
  }
  std::vector<char> allowed(cols);
  for (int j = 0; j < cols; ++j) allowed[j] = !is_art[j];
  if (!t.maximize(cost, allowed)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.assign(nv, 0);
  for (int r = 0; r < m; ++r) {
    if (t.basis()[r] < nv) out.x[t.basis()[r]] = t.rhs()[r];
  }
  for (int j = 0; j < nv; ++j) out.value += q(lp.objective()[j]) * out.x[j];
  return out;
}

LinearProgram reference_polymatroid_lp(const Instance& inst) {
  const int n = inst.n();
  const uint64_t size = uint64_t{1} << n;
  LinearProgram lp(Sense::kMaximize);
  for (uint64_t s = 0; s < size; ++s) lp.add_variable("v" + std::to_string(s));
  lp.set_objective(static_cast<int>(size - 1), 1);
  lp.add_row("zero", {{0, 1}}, Relation::kEqual, 0);
  for (uint64_t s = 0; s < size; ++s) {
    for (uint64_t t = s + 1; t < size; ++t) {
      const int a = static_cast<int>(s), b = static_cast<int>(t);
      const int u = static_cast<int>(s | t), i = static_cast<int>(s & t);
      if ((s & t) != s && (s & t) != t) {
        lp.add_row("sm", {{u, 1}, {i, 1}, {a, -1}, {b, -1}},
                   Relation::kLessEqual, 0);
      }
      if ((s & t) == s) {
        lp.add_row("mono", {{a, 1}, {b, -1}}, Relation::kLessEqual, 0);
      }
    }
  }
  for (const DifferenceConstraint& dc : inst.constraints()) {
    lp.add_row("dc",
               {{static_cast<int>(dc.y.mask()), 1},
                {static_cast<int>(dc.x.mask()), -1}},
               Relation::kLessEqual, dc.cost);
  }
  return lp;
}

DenseResult reference_polymatroid_bound(const Instance& inst) {
  return dense_solve(reference_polymatroid_lp(inst));
}

DenseResult reference_modular_bound(const Instance& inst) {
  LinearProgram lp(Sense::kMaximize);
  for (int a = 1; a <= inst.n(); ++a) {
    int v = lp.add_variable("z" + std::to_string(a));
    lp.set_objective(v, 1);
  }
  for (const DifferenceConstraint& dc : inst.constraints()) {
    std::vector<LpTerm> terms;
    for (int a : dc.y - dc.x) terms.push_back({a - 1, 1});
    lp.add_row("dc", terms, Relation::kLessEqual, dc.cost);
  }
  return dense_solve(lp);
}

mpq_class ds_row_sum(const Instance& inst, const std::vector<Rational>& delta,
                     AttrSet v) {
  mpq_class sum;
  for (int i = 0; i < inst.k(); ++i) {
    const bool x_disjoint = (inst[i].x.mask() & v.mask()) == 0;
    const bool y_meets = (inst[i].y.mask() & v.mask()) != 0;
    if (x_disjoint && y_meets) sum += q(delta[i]);
  }
  return sum;
}

std::vector<AttrSet> violated_ds_rows(const Instance& inst,
                                      const std::vector<Rational>& delta) {
  std::vector<AttrSet> out;
  const uint64_t size = uint64_t{1} << inst.n();
  for (uint64_t m = 1; m < size; ++m) {
    AttrSet v = AttrSet::from_mask(m);
    if (ds_row_sum(inst, delta, v) < 1) out.push_back(v);
  }
  return out;
}

bool is_polymatroid(int n, const std::vector<Rational>& h) {
  const uint64_t size = uint64_t{1} << n;
  if (h.size() != size || !h[0].is_zero()) return false;
  for (uint64_t s = 0; s < size; ++s) {
    for (uint64_t t = 0; t < size; ++t) {
      if ((s & t) == s && h[s] > h[t]) return false;
      if (h[s] + h[t] < h[s | t] + h[s & t]) return false;
    }
  }
  return true;
}

bool satisfies_constraints(const Instance& inst,
                           const std::vector<Rational>& h) {
  for (const DifferenceConstraint& dc : inst.constraints()) {
    if (h[dc.y.mask()] - h[dc.x.mask()] > dc.cost) return false;
  }
  return true;
}

int min_hitting_set(const HittingSetInstance& hs) {
  for (AttrSet s : hs.sets) {
    if (s.empty()) return -1;
  }
  int best = hs.elements + 1;
  const uint64_t size = uint64_t{1} << hs.elements;
  for (uint64_t m = 0; m < size; ++m) {
    AttrSet l = AttrSet::from_mask(m);
    if (l.size() >= best) continue;
    bool hits = std::all_of(hs.sets.begin(), hs.sets.end(),
                            [&](AttrSet s) { return s.intersects(l); });
    if (hits) best = l.size();
  }
  return best;
}

mpq_class reference_membership_sum(const Instance& inst,
                                   const std::vector<Rational>& delta,
                                   AttrSet w) {
  mpq_class sum;
  for (int i = 0; i < inst.k(); ++i) {
    if (inst[i].x.subset_of(w) && !inst[i].y.subset_of(w)) sum += q(delta[i]);
  }
  return sum;
}

bool reference_inside(const Instance& inst,
                      const std::vector<Rational>& delta) {
  const uint64_t full = inst.universe().mask();
  for (uint64_t m = 0; m < full; ++m) {
    if (reference_membership_sum(inst, delta, AttrSet::from_mask(m)) < 1) {
      return false;
    }
  }
  return true;
}

}  // namespace polybound::testing
