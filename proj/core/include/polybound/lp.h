#ifndef POLYBOUND_LP_H_
#define POLYBOUND_LP_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "polybound/rational.h"

namespace polybound {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LpTerm {
  int var;
  Rational coef;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  Relation rel = Relation::kLessEqual;
  Rational rhs;
};

// Linear program over named variables, all implicitly nonnegative.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::kMaximize) : sense_(sense) {}

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(names_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  // Names must be unique and free of whitespace.
  int add_variable(std::string name);
  // Throws LpError for an undeclared name.
  int variable(std::string_view name) const;
  bool has_variable(std::string_view name) const;
  const std::string& variable_name(int v) const { return names_[v]; }

  void set_objective(int var, Rational coef);
  const std::vector<Rational>& objective() const { return objective_; }

  // Duplicate variables within one row are merged. Throws LpError for an
  // out-of-range variable index.
  int add_row(std::string name, std::vector<LpTerm> terms, Relation rel,
              Rational rhs);
  const LpRow& row(int r) const { return rows_[r]; }
  const std::vector<LpRow>& rows() const { return rows_; }

  friend bool operator==(const LinearProgram& a, const LinearProgram& b);

 private:
  Sense sense_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Rational> objective_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

const char* to_string(LpStatus s);

// Dual sign convention: value == sum_r rhs_r * dual_r. For a maximization,
// duals of <= rows are >= 0 and of >= rows are <= 0; for a minimization the
// signs are reversed. Equality rows carry free duals.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> primal;  // per variable, when optimal
  std::vector<Rational> dual;    // per row, when optimal
  // Unbounded: a nonnegative direction d with A d within the row relations
  // (homogeneous) and objective . d improving.
  std::vector<Rational> ray;
  // Infeasible: y per row with the sign pattern of a maximization dual,
  // y^T A >= 0 componentwise and y^T b < 0.
  std::vector<Rational> farkas;
  int pivots = 0;
};

struct SolveOptions {
  // Run a floating-point simplex first and start the exact one from the
  // basis it finds. The reported solution always comes from the exact solve.
  bool float_warm_start = false;
};

LpSolution solve(const LinearProgram& lp, const SolveOptions& options = {});

// Point given by variable name; every variable must be present.
struct AssignmentVerdict {
  bool feasible = true;
  int row = -1;       // violated row, or -1 for a nonnegativity violation
  int variable = -1;  // for nonnegativity violations
  // Signed slack; negative when violated (x <= 3 at x = 4 gives -1).
  Rational slack;
};

AssignmentVerdict check_assignment(const LinearProgram& lp,
                                   const std::map<std::string, Rational>& point);
AssignmentVerdict check_assignment(const LinearProgram& lp,
                                   const std::vector<Rational>& point);

Rational evaluate_objective(const LinearProgram& lp,
                            const std::vector<Rational>& point);

// Textbook dual; variable r of the result corresponds to row r of lp. Free
// duals (equality rows) are split into a "+"/"-" pair of variables.
LinearProgram textbook_dual(const LinearProgram& lp);

// Plain-text dump:
//   sense max|min
//   var <name>            (declaration order)
//   obj <coef> <name> ... (nonzero objective terms)
//   row <name> <coef> <var> ... <= | >= | = <rhs>
std::string write_lp(const LinearProgram& lp);
LinearProgram read_lp(std::istream& in);
LinearProgram read_lp(std::string_view text);

// Cutting-plane driver. The separator inspects an optimal primal point and
// returns rows violated by it (empty when the point is acceptable); they are
// added as constraints and the LP is re-optimized from the current basis.
struct SeparatedRow {
  std::vector<LpTerm> terms;
  Relation rel = Relation::kLessEqual;
  Rational rhs;
};

using RowSeparator =
    std::function<std::vector<SeparatedRow>(const std::vector<Rational>&)>;

struct SeparationStats {
  int rounds = 0;
  int rows_added = 0;
};

// Returns the solution of the final LP; rows added by the separator are
// appended to lp so that duals line up with lp.rows().
LpSolution solve_with_separation(LinearProgram* lp, const RowSeparator& sep,
                                 SeparationStats* stats = nullptr);

}  // namespace polybound

#endif  // POLYBOUND_LP_H_
