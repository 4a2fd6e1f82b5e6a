#ifndef POLYBOUND_SRC_SIMPLEX_H_
#define POLYBOUND_SRC_SIMPLEX_H_

#include <vector>

#include "polybound/lp.h"
#include "polybound/rational.h"

namespace polybound::detail {

// Exact dictionary simplex for  max c.x  s.t.  A x <= b, x >= 0.
//
// Variable ids: structural 0..nv-1, then the slack of internal row r is
// nv + r. Rows may be appended after an optimal solve; optimize() then
// continues from the current basis with the dual simplex.
//
// Pricing is Dantzig's rule; after a run of degenerate pivots the engine
// switches to Bland's rule until the objective moves again, so it cannot
// cycle.
class Simplex {
 public:
  explicit Simplex(std::vector<Rational> objective);

  int num_structural() const { return nv_; }
  int num_rows() const { return nrows_; }

  // Appends  sum terms <= rhs. Returns the internal row index.
  int add_row(const std::vector<LpTerm>& terms, const Rational& rhs);

  // Solves a floating-point copy of the current dictionary and pivots this
  // one to the basis it ends on. The exact solve that follows certifies or
  // repairs that basis. Returns false when the float solve gave up.
  bool warm_start();

  LpStatus optimize();

  const Rational& value() const { return certified_ ? cert_value_ : z_; }
  std::vector<Rational> primal() const;
  // Nonnegative multipliers of the internal rows at the optimum.
  std::vector<Rational> row_duals() const;
  // Structural part of an improving ray, after kUnbounded.
  const std::vector<Rational>& ray() const { return ray_; }
  // y >= 0 per internal row with y^T A >= 0 and y^T b < 0, after kInfeasible.
  const std::vector<Rational>& farkas() const { return farkas_; }
  int pivots() const { return pivots_; }

 private:
  enum class Outcome { kDone, kUnbounded, kInfeasible };

  Rational cost(int var) const {
    return var < nv_ ? objective_[var] : Rational();
  }
  bool is_basic(int var) const { return pos_[var] >= 0; }
  int col_of(int var) const { return -pos_[var] - 1; }

  void pivot(int row, int col);
  Outcome primal_simplex();
  Outcome dual_simplex();
  Outcome phase_one();
  void recompute_objective();
  void note_pivot(bool degenerate);
  void farkas_from_row(int row);
  bool primal_feasible() const;
  bool dual_feasible() const;
  bool certify(const std::vector<int>& basic);

  int nv_;
  int nrows_ = 0;
  std::vector<Rational> objective_;
  std::vector<int> basis_;     // tableau row -> var id
  std::vector<int> nonbasic_;  // column -> var id
  std::vector<int> pos_;       // var id -> row, or -(col + 1)
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> beta_;
  std::vector<Rational> d_;
  Rational z_;

  LpStatus status_ = LpStatus::kOptimal;
  bool solved_ = false;
  std::vector<Rational> ray_;
  std::vector<Rational> farkas_;
  int pivots_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
  std::vector<int> nz_;  // scratch

  // Set when warm_start proved its basis optimal without pivoting; the
  // dictionary then still holds the starting basis.
  bool certified_ = false;
  Rational cert_value_;
  std::vector<Rational> cert_primal_;
  std::vector<Rational> cert_duals_;
};

}  // namespace polybound::detail

#endif  // POLYBOUND_SRC_SIMPLEX_H_
