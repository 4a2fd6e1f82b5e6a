#ifndef POLYBOUND_SRC_FLOAT_HINT_H_
#define POLYBOUND_SRC_FLOAT_HINT_H_

#include <utility>
#include <vector>

namespace polybound::detail {

// max c.x  s.t.  A x <= b, x >= 0, in doubles, stored by column.
struct FloatLp {
  int num_rows = 0;
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<double> b;
  std::vector<double> c;
};

// Revised simplex with an explicit dense basis inverse. Returns the basic
// variable ids (structural j, or num_columns + r for the slack of row r) of
// the basis it ends on, or an empty vector when it fails or the LP looks
// infeasible or unbounded. Only used as a hint for the exact engine.
std::vector<int> float_optimal_basis(const FloatLp& lp, int max_pivots);

}  // namespace polybound::detail

#endif  // POLYBOUND_SRC_FLOAT_HINT_H_
