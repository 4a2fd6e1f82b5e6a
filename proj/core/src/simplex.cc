#include "simplex.h"

#include <utility>

#include "float_hint.h"
#include "polybound/errors.h"

namespace polybound::detail {

namespace {

// Solves a x = b for square a; false when a is singular.
bool gauss_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                 std::vector<Rational>* x) {
  const int n = static_cast<int>(b.size());
  std::vector<int> order;
  std::vector<char> used(n, 0);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = 0; r < n; ++r) {
      if (used[r] || a[r][c].is_zero()) continue;
      if (p < 0 || (a[r][c].is_small() && !a[p][c].is_small())) p = r;
      if (a[p][c].is_small()) break;
    }
    if (p < 0) return false;
    used[p] = 1;
    order.push_back(p);
    Rational inv = Rational(1) / a[p][c];
    for (int l = c; l < n; ++l) {
      if (!a[p][l].is_zero()) a[p][l] *= inv;
    }
    b[p] *= inv;
    for (int r = 0; r < n; ++r) {
      if (used[r] || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (int l = c; l < n; ++l) {
        if (!a[p][l].is_zero()) a[r][l].sub_mul(f, a[p][l]);
      }
      b[r].sub_mul(f, b[p]);
    }
  }
  x->assign(n, Rational());
  for (int c = n - 1; c >= 0; --c) {
    int p = order[c];
    Rational v = b[p];
    for (int l = c + 1; l < n; ++l) {
      if (!a[p][l].is_zero()) v.sub_mul(a[p][l], (*x)[l]);
    }
    (*x)[c] = std::move(v);
  }
  return true;
}
constexpr int kDegenerateLimit = 50;
}  // namespace

Simplex::Simplex(std::vector<Rational> objective)
    : nv_(static_cast<int>(objective.size())), objective_(std::move(objective)) {
  pos_.resize(nv_);
  for (int v = 0; v < nv_; ++v) {
    nonbasic_.push_back(v);
    pos_[v] = -(v + 1);
    d_.push_back(objective_[v]);
  }
}

int Simplex::add_row(const std::vector<LpTerm>& terms, const Rational& rhs) {
  certified_ = false;
  const int ncols = static_cast<int>(nonbasic_.size());
  std::vector<Rational> row(ncols);
  Rational b = rhs;
  for (const LpTerm& t : terms) {
    if (t.var < 0 || t.var >= nv_) throw LpError("row references unknown variable");
    if (t.coef.is_zero()) continue;
    int p = pos_[t.var];
    if (p < 0) {
      row[-p - 1] += t.coef;
    } else {
      b.sub_mul(t.coef, beta_[p]);
      const std::vector<Rational>& src = rows_[p];
      for (int l = 0; l < ncols; ++l) {
        if (!src[l].is_zero()) row[l].sub_mul(t.coef, src[l]);
      }
    }
  }
  int slack = nv_ + nrows_;
  int r = static_cast<int>(basis_.size());
  ++nrows_;
  rows_.push_back(std::move(row));
  beta_.push_back(std::move(b));
  basis_.push_back(slack);
  pos_.push_back(r);
  return nrows_ - 1;
}

void Simplex::note_pivot(bool degenerate) {
  ++pivots_;
  if (degenerate) {
    if (++degenerate_run_ >= kDegenerateLimit) bland_ = true;
  } else {
    degenerate_run_ = 0;
    bland_ = false;
  }
}

void Simplex::pivot(int r, int c) {
  std::vector<Rational>& pr = rows_[r];
  const int ncols = static_cast<int>(pr.size());
  Rational inv = Rational(1) / pr[c];
  nz_.clear();
  for (int l = 0; l < ncols; ++l) {
    if (l == c || pr[l].is_zero()) continue;
    pr[l] *= inv;
    nz_.push_back(l);
  }
  pr[c] = inv;
  beta_[r] *= inv;

  const int m = static_cast<int>(rows_.size());
  for (int s = 0; s < m; ++s) {
    if (s == r) continue;
    std::vector<Rational>& rs = rows_[s];
    if (rs[c].is_zero()) continue;
    Rational f = rs[c];
    for (int l : nz_) rs[l].sub_mul(f, pr[l]);
    rs[c] = -(f * inv);
    beta_[s].sub_mul(f, beta_[r]);
  }
  if (!d_[c].is_zero()) {
    Rational f = d_[c];
    for (int l : nz_) d_[l].sub_mul(f, pr[l]);
    d_[c] = -(f * inv);
    z_ += f * beta_[r];
  }

  int entering = nonbasic_[c];
  int leaving = basis_[r];
  basis_[r] = entering;
  nonbasic_[c] = leaving;
  pos_[entering] = r;
  pos_[leaving] = -(c + 1);
}

Simplex::Outcome Simplex::primal_simplex() {
  while (true) {
    const int ncols = static_cast<int>(nonbasic_.size());
    int c = -1;
    for (int l = 0; l < ncols; ++l) {
      if (d_[l].sign() <= 0) continue;
      if (c < 0) {
        c = l;
        continue;
      }
      if (bland_) {
        if (nonbasic_[l] < nonbasic_[c]) c = l;
      } else {
        auto cmp = d_[l] <=> d_[c];
        if (cmp > 0 || (cmp == 0 && nonbasic_[l] < nonbasic_[c])) c = l;
      }
    }
    if (c < 0) return Outcome::kDone;

    int r = -1;
    const int m = static_cast<int>(rows_.size());
    for (int s = 0; s < m; ++s) {
      const Rational& a = rows_[s][c];
      if (a.sign() <= 0) continue;
      if (r < 0) {
        r = s;
        continue;
      }
      // beta_s / a_s  vs  beta_r / a_r
      auto cmp = beta_[s] * rows_[r][c] <=> beta_[r] * a;
      if (cmp < 0 || (cmp == 0 && basis_[s] < basis_[r])) r = s;
    }
    if (r < 0) {
      ray_.assign(nv_, Rational());
      int entering = nonbasic_[c];
      if (entering < nv_) ray_[entering] = 1;
      for (int s = 0; s < m; ++s) {
        if (basis_[s] < nv_) ray_[basis_[s]] = -rows_[s][c];
      }
      return Outcome::kUnbounded;
    }
    bool degenerate = beta_[r].is_zero();
    pivot(r, c);
    note_pivot(degenerate);
  }
}

void Simplex::farkas_from_row(int r) {
  farkas_.assign(nrows_, Rational());
  for (int i = 0; i < nrows_; ++i) {
    int p = pos_[nv_ + i];
    if (p >= 0) {
      farkas_[i] = p == r ? Rational(1) : Rational();
    } else {
      farkas_[i] = rows_[r][-p - 1];
    }
  }
}

Simplex::Outcome Simplex::dual_simplex() {
  while (true) {
    const int m = static_cast<int>(rows_.size());
    int r = -1;
    for (int s = 0; s < m; ++s) {
      if (beta_[s].sign() >= 0) continue;
      if (r < 0) {
        r = s;
        continue;
      }
      if (bland_) {
        if (basis_[s] < basis_[r]) r = s;
      } else {
        auto cmp = beta_[s] <=> beta_[r];
        if (cmp < 0 || (cmp == 0 && basis_[s] < basis_[r])) r = s;
      }
    }
    if (r < 0) return Outcome::kDone;

    const std::vector<Rational>& pr = rows_[r];
    const int ncols = static_cast<int>(pr.size());
    int c = -1;
    for (int l = 0; l < ncols; ++l) {
      if (pr[l].sign() >= 0) continue;
      if (c < 0) {
        c = l;
        continue;
      }
      // d_l / a_l  vs  d_c / a_c, both denominators negative.
      auto cmp = d_[l] * pr[c] <=> d_[c] * pr[l];
      if (cmp < 0 || (cmp == 0 && nonbasic_[l] < nonbasic_[c])) c = l;
    }
    if (c < 0) {
      farkas_from_row(r);
      return Outcome::kInfeasible;
    }
    bool degenerate = d_[c].is_zero();
    pivot(r, c);
    note_pivot(degenerate);
  }
}

void Simplex::recompute_objective() {
  const int ncols = static_cast<int>(nonbasic_.size());
  d_.assign(ncols, Rational());
  for (int l = 0; l < ncols; ++l) d_[l] = cost(nonbasic_[l]);
  z_ = Rational();
  const int m = static_cast<int>(rows_.size());
  for (int r = 0; r < m; ++r) {
    Rational cb = basis_[r] < nv_ ? objective_[basis_[r]] : Rational();
    if (cb.is_zero()) continue;
    z_ += cb * beta_[r];
    const std::vector<Rational>& row = rows_[r];
    for (int l = 0; l < ncols; ++l) {
      if (!row[l].is_zero()) d_[l].sub_mul(cb, row[l]);
    }
  }
}

// Chvatal's auxiliary problem: max -x0 with x0 subtracted from every row.
Simplex::Outcome Simplex::phase_one() {
  const int m = static_cast<int>(rows_.size());
  const int aux = static_cast<int>(pos_.size());
  const int aux_col = static_cast<int>(nonbasic_.size());
  pos_.push_back(-(aux_col + 1));
  nonbasic_.push_back(aux);
  for (int r = 0; r < m; ++r) rows_[r].push_back(Rational(-1));
  d_.assign(nonbasic_.size(), Rational());
  d_[aux_col] = -1;
  z_ = Rational();

  int r0 = -1;
  for (int r = 0; r < m; ++r) {
    if (beta_[r].sign() >= 0) continue;
    if (r0 < 0 || beta_[r] < beta_[r0] ||
        (beta_[r] == beta_[r0] && basis_[r] < basis_[r0])) {
      r0 = r;
    }
  }
  pivot(r0, aux_col);
  note_pivot(false);
  primal_simplex();

  if (z_.sign() < 0) {
    farkas_.assign(nrows_, Rational());
    for (int i = 0; i < nrows_; ++i) {
      int p = pos_[nv_ + i];
      if (p < 0) farkas_[i] = -d_[-p - 1];
    }
    return Outcome::kInfeasible;
  }

  if (pos_[aux] >= 0) {
    int r = pos_[aux];
    int best = -1;
    const int ncols = static_cast<int>(nonbasic_.size());
    for (int l = 0; l < ncols; ++l) {
      if (rows_[r][l].is_zero()) continue;
      if (best < 0 || nonbasic_[l] < nonbasic_[best]) best = l;
    }
    if (best >= 0) {
      pivot(r, best);
      note_pivot(true);
    }
  }
  if (pos_[aux] < 0) {
    int c = -pos_[aux] - 1;
    int last = static_cast<int>(nonbasic_.size()) - 1;
    if (c != last) {
      for (auto& row : rows_) std::swap(row[c], row[last]);
      std::swap(nonbasic_[c], nonbasic_[last]);
      pos_[nonbasic_[c]] = -(c + 1);
    }
    for (auto& row : rows_) row.pop_back();
    nonbasic_.pop_back();
    pos_.pop_back();
  } else {
    // The auxiliary variable sits in an all-zero row: the row is redundant.
    int r = pos_[aux];
    rows_.erase(rows_.begin() + r);
    beta_.erase(beta_.begin() + r);
    basis_.erase(basis_.begin() + r);
    for (int s = r; s < static_cast<int>(basis_.size()); ++s) --pos_[basis_[s]];
    pos_.pop_back();
  }
  recompute_objective();
  return Outcome::kDone;
}

bool Simplex::primal_feasible() const {
  for (const Rational& b : beta_) {
    if (b.sign() < 0) return false;
  }
  return true;
}

bool Simplex::dual_feasible() const {
  for (const Rational& dj : d_) {
    if (dj.sign() > 0) return false;
  }
  return true;
}

LpStatus Simplex::optimize() {
  if (certified_) return status_ = LpStatus::kOptimal;
  if (solved_ && status_ == LpStatus::kInfeasible) return status_;
  solved_ = true;
  ray_.clear();
  farkas_.clear();

  if (!primal_feasible()) {
    Outcome o = dual_feasible() ? dual_simplex() : phase_one();
    if (o == Outcome::kInfeasible) return status_ = LpStatus::kInfeasible;
  }
  Outcome o = primal_simplex();
  status_ = o == Outcome::kUnbounded ? LpStatus::kUnbounded : LpStatus::kOptimal;
  return status_;
}

// Checks exactly whether the given basis is optimal, working from the
// starting dictionary (all slacks basic, so rows_ is the constraint matrix).
bool Simplex::certify(const std::vector<int>& basic) {
  const int m = static_cast<int>(rows_.size());
  std::vector<char> in_basis(pos_.size(), 0);
  for (int v : basic) in_basis[v] = 1;
  std::vector<int> cols;
  std::vector<int> tight;
  for (int v = 0; v < nv_; ++v) {
    if (in_basis[v]) cols.push_back(v);
  }
  for (int r = 0; r < m; ++r) {
    if (!in_basis[nv_ + r]) tight.push_back(r);
  }
  const int k = static_cast<int>(cols.size());
  if (static_cast<int>(tight.size()) != k) return false;

  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  std::vector<std::vector<Rational>> at(k, std::vector<Rational>(k));
  std::vector<Rational> b(k);
  std::vector<Rational> c(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Rational& e = rows_[tight[i]][cols[j]];
      if (e.is_zero()) continue;
      a[i][j] = e;
      at[j][i] = e;
    }
    b[i] = beta_[tight[i]];
    c[i] = objective_[cols[i]];
  }
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  if (!gauss_solve(std::move(a), std::move(b), &xs)) return false;
  if (!gauss_solve(std::move(at), std::move(c), &ys)) return false;

  std::vector<Rational> x(nv_);
  for (int j = 0; j < k; ++j) {
    if (xs[j].sign() < 0) return false;
    x[cols[j]] = xs[j];
  }
  std::vector<Rational> y(nrows_);
  for (int i = 0; i < k; ++i) {
    if (ys[i].sign() < 0) return false;
    y[tight[i]] = ys[i];
  }
  for (int r = 0; r < m; ++r) {
    Rational slack = beta_[r];
    for (int v : cols) {
      if (!rows_[r][v].is_zero()) slack.sub_mul(rows_[r][v], x[v]);
    }
    if (slack.sign() < 0) return false;
  }
  std::vector<Rational> reduced = objective_;
  for (int r : tight) {
    if (y[r].is_zero()) continue;
    for (int v = 0; v < nv_; ++v) {
      if (!rows_[r][v].is_zero()) reduced[v].sub_mul(y[r], rows_[r][v]);
    }
  }
  for (int v = 0; v < nv_; ++v) {
    if (!in_basis[v] && reduced[v].sign() > 0) return false;
  }

  cert_value_ = Rational();
  for (int v : cols) cert_value_ += objective_[v] * x[v];
  cert_primal_ = std::move(x);
  cert_duals_ = std::move(y);
  certified_ = true;
  solved_ = true;
  status_ = LpStatus::kOptimal;
  return true;
}

bool Simplex::warm_start() {
  const int m = static_cast<int>(rows_.size());
  bool at_start = pivots_ == 0;
  for (int r = 0; r < m && at_start; ++r) at_start = basis_[r] == nv_ + r;
  if (!at_start) return false;

  FloatLp lp;
  lp.num_rows = m;
  lp.columns.resize(nv_);
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < nv_; ++v) {
      if (!rows_[r][v].is_zero()) {
        lp.columns[v].emplace_back(r, rows_[r][v].to_double());
      }
    }
    lp.b.push_back(beta_[r].to_double());
  }
  for (const Rational& c : objective_) lp.c.push_back(c.to_double());
  std::vector<int> target = float_optimal_basis(lp, 20 * (m + nv_) + 1000);
  if (target.empty()) return false;
  if (certify(target)) return true;

  // Not exactly optimal: pivot towards the hinted basis and let optimize()
  // finish from there.
  std::vector<char> wanted(pos_.size(), 0);
  for (int v : target) wanted[v] = 1;
  for (int v : target) {
    if (is_basic(v)) continue;
    int c = col_of(v);
    for (int r = 0; r < m; ++r) {
      if (wanted[basis_[r]] || rows_[r][c].is_zero()) continue;
      pivot(r, c);
      ++pivots_;
      break;
    }
  }
  return true;
}

std::vector<Rational> Simplex::primal() const {
  if (certified_) return cert_primal_;
  std::vector<Rational> x(nv_);
  for (int r = 0; r < static_cast<int>(basis_.size()); ++r) {
    if (basis_[r] < nv_) x[basis_[r]] = beta_[r];
  }
  return x;
}

std::vector<Rational> Simplex::row_duals() const {
  if (certified_) return cert_duals_;
  std::vector<Rational> y(nrows_);
  for (int i = 0; i < nrows_; ++i) {
    int p = pos_[nv_ + i];
    if (p < 0) y[i] = -d_[-p - 1];
  }
  return y;
}

}  // namespace polybound::detail
