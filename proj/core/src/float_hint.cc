#include "float_hint.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace polybound::detail {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPerturb = 1e-7;
constexpr int kRefactorEvery = 2000;

class RevisedSimplex {
 public:
  RevisedSimplex(const FloatLp& lp, int max_pivots)
      : lp_(lp),
        m_(lp.num_rows),
        nv_(static_cast<int>(lp.columns.size())),
        max_pivots_(max_pivots) {
    rows_.resize(m_);
    for (int j = 0; j < nv_; ++j) {
      for (const auto& [i, a] : lp.columns[j]) rows_[i].emplace_back(j, a);
    }
  }

  std::vector<int> run() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    b_ = lp_.b;
    for (double& v : b_) v += kPerturb * u(rng);
    basis_.resize(m_);
    pos_.assign(nv_ + m_, -1);
    for (int r = 0; r < m_; ++r) {
      basis_[r] = nv_ + r;
      pos_[nv_ + r] = r;
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) binv_[idx(r, r)] = 1.0;
    weight_.assign(m_, 1.0);
    x_ = b_;

    bool feasible = true;
    for (double v : x_) feasible = feasible && v >= -kFeasTol;
    if (!feasible) {
      // Shift positive costs to zero so the slack basis is dual feasible,
      // then let the dual simplex find a feasible basis.
      cost_.assign(nv_ + m_, 0.0);
      for (int j = 0; j < nv_; ++j) {
        cost_[j] = std::min(lp_.c[j], 0.0) - kPerturb * u(rng);
      }
      recompute_duals();
      if (!dual()) return {};
    }
    cost_.assign(nv_ + m_, 0.0);
    for (int j = 0; j < nv_; ++j) cost_[j] = lp_.c[j];
    recompute_duals();
    if (!primal()) return {};
    return basis_;
  }

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * m_ + c;
  }

  // alpha_j = rho . A_j for every variable.
  void row_of(int r) {
    const double* rho = &binv_[idx(r, 0)];
    alpha_.assign(nv_ + m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (rho[i] == 0.0) continue;
      for (const auto& [j, a] : rows_[i]) alpha_[j] += rho[i] * a;
      alpha_[nv_ + i] = rho[i];
    }
  }

  // u = B^-1 A_q.
  void column_of(int q) {
    u_.assign(m_, 0.0);
    if (q >= nv_) {
      for (int r = 0; r < m_; ++r) u_[r] = binv_[idx(r, q - nv_)];
      return;
    }
    for (const auto& [i, a] : lp_.columns[q]) {
      for (int r = 0; r < m_; ++r) u_[r] += binv_[idx(r, i)] * a;
    }
  }

  void recompute_duals() {
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      for (int i = 0; i < m_; ++i) y[i] += cb * binv_[idx(r, i)];
    }
    d_.assign(nv_ + m_, 0.0);
    for (int j = 0; j < nv_; ++j) {
      double s = cost_[j];
      for (const auto& [i, a] : lp_.columns[j]) s -= y[i] * a;
      d_[j] = s;
    }
    for (int i = 0; i < m_; ++i) d_[nv_ + i] = cost_[nv_ + i] - y[i];
    for (int r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
  }

  // Rebuilds B^-1 from scratch by Gauss-Jordan with partial pivoting.
  bool refactor() {
    std::vector<double> bm(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      int j = basis_[r];
      if (j >= nv_) {
        bm[idx(j - nv_, r)] = 1.0;
      } else {
        for (const auto& [i, a] : lp_.columns[j]) bm[idx(i, r)] = a;
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) inv[idx(r, r)] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int p = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(bm[idx(r, c)]) > std::abs(bm[idx(p, c)])) p = r;
      }
      if (std::abs(bm[idx(p, c)]) < 1e-12) return false;
      if (p != c) {
        for (int l = 0; l < m_; ++l) {
          std::swap(bm[idx(p, l)], bm[idx(c, l)]);
          std::swap(inv[idx(p, l)], inv[idx(c, l)]);
        }
      }
      double f = 1.0 / bm[idx(c, c)];
      for (int l = 0; l < m_; ++l) {
        bm[idx(c, l)] *= f;
        inv[idx(c, l)] *= f;
      }
      for (int r = 0; r < m_; ++r) {
        double g = bm[idx(r, c)];
        if (r == c || g == 0.0) continue;
        for (int l = 0; l < m_; ++l) {
          bm[idx(r, l)] -= g * bm[idx(c, l)];
          inv[idx(r, l)] -= g * inv[idx(c, l)];
        }
      }
    }
    binv_ = std::move(inv);
    for (int r = 0; r < m_; ++r) {
      double w = 0;
      for (int l = 0; l < m_; ++l) w += binv_[idx(r, l)] * binv_[idx(r, l)];
      weight_[r] = w;
    }
    x_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      double s = 0;
      for (int i = 0; i < m_; ++i) s += binv_[idx(r, i)] * b_[i];
      x_[r] = s;
    }
    recompute_duals();
    return true;
  }

  // Needs u_ = B^-1 A_q and alpha_ for row r.
  bool pivot(int r, int q) {
    double ur = u_[r];
    double theta_p = x_[r] / ur;
    for (int i = 0; i < m_; ++i) x_[i] -= theta_p * u_[i];
    x_[r] = theta_p;
    double theta_d = d_[q] / alpha_[q];
    for (int j = 0; j < nv_ + m_; ++j) {
      if (alpha_[j] != 0.0) d_[j] -= theta_d * alpha_[j];
    }
    int leaving = basis_[r];
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    // Only the nonzeros of the pivot row matter; B^-1 stays sparse here.
    double* pr = &binv_[idx(r, 0)];
    double pn = 0;
    nz_.clear();
    for (int l = 0; l < m_; ++l) {
      if (pr[l] == 0.0) continue;
      pr[l] /= ur;
      pn += pr[l] * pr[l];
      nz_.push_back(l);
    }
    weight_[r] = pn;
    for (int i = 0; i < m_; ++i) {
      double f = u_[i];
      if (i == r || f == 0.0) continue;
      double* row = &binv_[idx(i, 0)];
      double dot = 0;
      for (int l : nz_) {
        dot += row[l] * pr[l];
        row[l] -= f * pr[l];
      }
      weight_[i] = std::max(weight_[i] - 2 * f * dot + f * f * pn, 1e-12);
    }
    basis_[r] = q;
    pos_[q] = r;
    pos_[leaving] = -1;
    ++pivots_;
    if (pivots_ % kRefactorEvery == 0) return refactor();
    return true;
  }

  bool primal() {
    while (pivots_ < max_pivots_) {
      int q = -1;
      for (int j = 0; j < nv_ + m_; ++j) {
        if (pos_[j] < 0 && d_[j] > kCostTol && (q < 0 || d_[j] > d_[q])) q = j;
      }
      if (q < 0) return true;
      column_of(q);
      int r = -1;
      double best = 0;
      for (int i = 0; i < m_; ++i) {
        if (u_[i] <= kPivotTol) continue;
        double ratio = std::max(x_[i], 0.0) / u_[i];
        if (r < 0 || ratio < best) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return false;
      row_of(r);
      if (!pivot(r, q)) return false;
    }
    return false;
  }

  bool dual() {
    while (pivots_ < max_pivots_) {
      // Dual steepest edge: the weights are the exact squared row norms of
      // the basis inverse.
      int r = -1;
      double best_score = 0;
      for (int i = 0; i < m_; ++i) {
        if (x_[i] >= -kFeasTol) continue;
        double score = x_[i] * x_[i] / weight_[i];
        if (r < 0 || score > best_score) {
          r = i;
          best_score = score;
        }
      }
      if (r < 0) return true;
      row_of(r);
      int q = -1;
      double best = 0;
      for (int j = 0; j < nv_ + m_; ++j) {
        if (pos_[j] >= 0 || alpha_[j] >= -kPivotTol) continue;
        double ratio = std::min(d_[j], 0.0) / alpha_[j];
        if (q < 0 || ratio < best) {
          q = j;
          best = ratio;
        }
      }
      if (q < 0) return false;
      column_of(q);
      if (std::abs(u_[r]) <= kPivotTol) return false;
      if (!pivot(r, q)) return false;
    }
    return false;
  }

  const FloatLp& lp_;
  int m_;
  int nv_;
  int max_pivots_;
  int pivots_ = 0;
  std::vector<double> b_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<int> pos_;
  std::vector<double> binv_;
  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<double> weight_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<int> nz_;
  std::vector<double> alpha_;
  std::vector<double> u_;
};

}  // namespace

std::vector<int> float_optimal_basis(const FloatLp& lp, int max_pivots) {
  return RevisedSimplex(lp, max_pivots).run();
}

}  // namespace polybound::detail
