#include "polybound/lp.h"

#include <memory>
#include <sstream>
#include <utility>

#include "polybound/errors.h"
#include "simplex.h"
#include "text_scan.h"

namespace polybound {

int LinearProgram::add_variable(std::string name) {
  if (name.empty()) name = "x" + std::to_string(names_.size());
  for (char ch : name) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      throw LpError("variable name '" + name + "' contains whitespace");
    }
  }
  if (index_.count(name)) throw LpError("duplicate variable '" + name + "'");
  int v = static_cast<int>(names_.size());
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  objective_.emplace_back();
  return v;
}

int LinearProgram::variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw LpError("undeclared variable '" + std::string(name) + "'");
  }
  return it->second;
}

bool LinearProgram::has_variable(std::string_view name) const {
  return index_.count(std::string(name)) > 0;
}

void LinearProgram::set_objective(int var, Rational coef) {
  if (var < 0 || var >= num_variables()) {
    throw LpError("objective references undeclared variable");
  }
  objective_[var] = std::move(coef);
}

int LinearProgram::add_row(std::string name, std::vector<LpTerm> terms,
                           Relation rel, Rational rhs) {
  std::vector<LpTerm> merged;
  std::unordered_map<int, std::size_t> at;
  for (LpTerm& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw LpError("row '" + name + "' references undeclared variable " +
                    std::to_string(t.var));
    }
    auto it = at.find(t.var);
    if (it == at.end()) {
      at.emplace(t.var, merged.size());
      merged.push_back(std::move(t));
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const LpTerm& t) { return t.coef.is_zero(); });
  if (name.empty()) name = "r" + std::to_string(rows_.size());
  rows_.push_back(LpRow{std::move(name), std::move(merged), rel, std::move(rhs)});
  return static_cast<int>(rows_.size()) - 1;
}

bool operator==(const LinearProgram& a, const LinearProgram& b) {
  if (a.sense_ != b.sense_ || a.names_ != b.names_ ||
      a.objective_ != b.objective_ || a.rows_.size() != b.rows_.size()) {
    return false;
  }
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    const LpRow& x = a.rows_[r];
    const LpRow& y = b.rows_[r];
    if (x.name != y.name || x.rel != y.rel || x.rhs != y.rhs ||
        x.terms.size() != y.terms.size()) {
      return false;
    }
    for (std::size_t t = 0; t < x.terms.size(); ++t) {
      if (x.terms[t].var != y.terms[t].var ||
          x.terms[t].coef != y.terms[t].coef) {
        return false;
      }
    }
  }
  return true;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kInfeasible:
      return "infeasible";
  }
  return "?";
}

namespace {

// An LP loaded into the simplex engine in  max c.x, A x <= b  form.
class LoadedLp {
 public:
  explicit LoadedLp(const LinearProgram& lp)
      : minimize_(lp.sense() == Sense::kMinimize),
        engine_(internal_objective(lp)) {
    for (const LpRow& row : lp.rows()) append(row.terms, row.rel, row.rhs);
  }

  void append(const std::vector<LpTerm>& terms, Relation rel,
              const Rational& rhs) {
    int original = num_original_++;
    if (rel == Relation::kLessEqual || rel == Relation::kEqual) {
      engine_.add_row(terms, rhs);
      map_.push_back({original, 1});
    }
    if (rel == Relation::kGreaterEqual || rel == Relation::kEqual) {
      std::vector<LpTerm> neg;
      neg.reserve(terms.size());
      for (const LpTerm& t : terms) neg.push_back({t.var, -t.coef});
      engine_.add_row(neg, -rhs);
      map_.push_back({original, -1});
    }
  }

  LpSolution solve(bool warm_start = false) {
    LpSolution sol;
    if (warm_start) engine_.warm_start();
    sol.status = engine_.optimize();
    sol.pivots = engine_.pivots();
    if (sol.status == LpStatus::kOptimal) {
      sol.value = minimize_ ? -engine_.value() : engine_.value();
      sol.primal = engine_.primal();
      sol.dual = fold(engine_.row_duals());
      if (minimize_) {
        for (Rational& y : sol.dual) y = -y;
      }
    } else if (sol.status == LpStatus::kUnbounded) {
      sol.ray = engine_.ray();
    } else {
      sol.farkas = fold(engine_.farkas());
    }
    return sol;
  }

 private:
  struct RowMap {
    int original;
    int sign;
  };

  static std::vector<Rational> internal_objective(const LinearProgram& lp) {
    std::vector<Rational> c = lp.objective();
    if (lp.sense() == Sense::kMinimize) {
      for (Rational& v : c) v = -v;
    }
    return c;
  }

  std::vector<Rational> fold(const std::vector<Rational>& internal) const {
    std::vector<Rational> out(num_original_);
    for (std::size_t i = 0; i < internal.size(); ++i) {
      if (internal[i].is_zero()) continue;
      if (map_[i].sign > 0) {
        out[map_[i].original] += internal[i];
      } else {
        out[map_[i].original] -= internal[i];
      }
    }
    return out;
  }

  bool minimize_;
  detail::Simplex engine_;
  std::vector<RowMap> map_;
  int num_original_ = 0;
};

Rational row_activity(const LpRow& row, const std::vector<Rational>& x) {
  Rational s;
  for (const LpTerm& t : row.terms) {
    if (!x[t.var].is_zero()) s += t.coef * x[t.var];
  }
  return s;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolveOptions& options) {
  LoadedLp loaded(lp);
  return loaded.solve(options.float_warm_start);
}

LpSolution solve_with_separation(LinearProgram* lp, const RowSeparator& sep,
                                 SeparationStats* stats) {
  LoadedLp loaded(*lp);
  SeparationStats local;
  while (true) {
    LpSolution sol = loaded.solve();
    ++local.rounds;
    if (sol.status != LpStatus::kOptimal) {
      if (stats) *stats = local;
      return sol;
    }
    std::vector<SeparatedRow> cuts = sep(sol.primal);
    if (cuts.empty()) {
      if (stats) *stats = local;
      return sol;
    }
    for (SeparatedRow& cut : cuts) {
      int r = lp->add_row("cut" + std::to_string(lp->num_rows()),
                          std::move(cut.terms), cut.rel, cut.rhs);
      const LpRow& added = lp->row(r);
      loaded.append(added.terms, added.rel, added.rhs);
      ++local.rows_added;
    }
  }
}

AssignmentVerdict check_assignment(const LinearProgram& lp,
                                   const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != lp.num_variables()) {
    throw LpError("point does not cover every variable");
  }
  AssignmentVerdict v;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (point[j].sign() < 0) {
      v.feasible = false;
      v.variable = j;
      v.slack = point[j];
      return v;
    }
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LpRow& row = lp.row(r);
    Rational lhs = row_activity(row, point);
    Rational slack;
    switch (row.rel) {
      case Relation::kLessEqual:
        slack = row.rhs - lhs;
        break;
      case Relation::kGreaterEqual:
        slack = lhs - row.rhs;
        break;
      case Relation::kEqual:
        slack = -Rational::abs(lhs - row.rhs);
        break;
    }
    if (slack.sign() < 0) {
      v.feasible = false;
      v.row = r;
      v.slack = slack;
      return v;
    }
  }
  return v;
}

AssignmentVerdict check_assignment(const LinearProgram& lp,
                                   const std::map<std::string, Rational>& point) {
  std::vector<Rational> x(lp.num_variables());
  std::vector<bool> seen(lp.num_variables(), false);
  for (const auto& [name, value] : point) {
    int j = lp.variable(name);
    x[j] = value;
    seen[j] = true;
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!seen[j]) {
      throw LpError("point is missing variable '" + lp.variable_name(j) + "'");
    }
  }
  return check_assignment(lp, x);
}

Rational evaluate_objective(const LinearProgram& lp,
                            const std::vector<Rational>& point) {
  Rational s;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!lp.objective()[j].is_zero()) s += lp.objective()[j] * point[j];
  }
  return s;
}

LinearProgram textbook_dual(const LinearProgram& lp) {
  const bool primal_max = lp.sense() == Sense::kMaximize;
  LinearProgram dual(primal_max ? Sense::kMinimize : Sense::kMaximize);
  // Per primal row: the dual variables and their signs in y_r.
  std::vector<std::vector<std::pair<int, int>>> parts(lp.num_rows());
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LpRow& row = lp.row(r);
    const std::string base = "y_" + row.name;
    if (row.rel == Relation::kEqual) {
      parts[r].push_back({dual.add_variable(base + "+"), 1});
      parts[r].push_back({dual.add_variable(base + "-"), -1});
      continue;
    }
    // Natural sign: y >= 0 for <= rows of a max and >= rows of a min.
    bool natural = (row.rel == Relation::kLessEqual) == primal_max;
    parts[r].push_back({dual.add_variable(natural ? base : base + "-"),
                        natural ? 1 : -1});
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    for (auto [v, s] : parts[r]) {
      dual.set_objective(v, s > 0 ? lp.row(r).rhs : -lp.row(r).rhs);
    }
  }
  std::vector<std::vector<LpTerm>> columns(lp.num_variables());
  for (int r = 0; r < lp.num_rows(); ++r) {
    for (const LpTerm& t : lp.row(r).terms) {
      for (auto [v, s] : parts[r]) {
        columns[t.var].push_back({v, s > 0 ? t.coef : -t.coef});
      }
    }
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    dual.add_row("col_" + lp.variable_name(j), std::move(columns[j]),
                 primal_max ? Relation::kGreaterEqual : Relation::kLessEqual,
                 lp.objective()[j]);
  }
  return dual;
}

namespace {
const char* relation_token(Relation rel) {
  switch (rel) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "?";
}
}  // namespace

std::string write_lp(const LinearProgram& lp) {
  std::ostringstream out;
  out << "sense " << (lp.sense() == Sense::kMaximize ? "max" : "min") << "\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    out << "var " << lp.variable_name(j) << "\n";
  }
  out << "obj";
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!lp.objective()[j].is_zero()) {
      out << " " << lp.objective()[j] << " " << lp.variable_name(j);
    }
  }
  out << "\n";
  for (const LpRow& row : lp.rows()) {
    out << "row " << row.name;
    for (const LpTerm& t : row.terms) {
      out << " " << t.coef << " " << lp.variable_name(t.var);
    }
    out << " " << relation_token(row.rel) << " " << row.rhs << "\n";
  }
  return out.str();
}

LinearProgram read_lp(std::istream& in) {
  std::unique_ptr<LinearProgram> lp;
  detail::for_each_significant_line(in, [&](detail::LineScanner& scan) {
    std::string_view kw = scan.word();
    if (!lp) {
      if (kw != "sense") scan.fail("expected 'sense max|min'");
      std::string_view s = scan.word();
      if (s != "max" && s != "min") scan.fail("sense must be max or min");
      lp = std::make_unique<LinearProgram>(s == "max" ? Sense::kMaximize
                                                      : Sense::kMinimize);
      scan.expect_end();
      return;
    }
    auto lookup = [&](std::string_view name) {
      if (!lp->has_variable(name)) {
        scan.fail("undeclared variable '" + std::string(name) + "'");
      }
      return lp->variable(name);
    };
    if (kw == "var") {
      lp->add_variable(std::string(scan.word()));
      scan.expect_end();
    } else if (kw == "obj") {
      while (!scan.at_end()) {
        Rational c = scan.rational();
        lp->set_objective(lookup(scan.word()), c);
      }
    } else if (kw == "row") {
      std::string name(scan.word());
      std::vector<LpTerm> terms;
      Relation rel;
      while (true) {
        if (scan.at_end()) scan.fail("row is missing a relation");
        if (scan.consume("<=")) {
          rel = Relation::kLessEqual;
          break;
        }
        if (scan.consume(">=")) {
          rel = Relation::kGreaterEqual;
          break;
        }
        if (scan.consume("=")) {
          rel = Relation::kEqual;
          break;
        }
        Rational c = scan.rational();
        terms.push_back({lookup(scan.word()), c});
      }
      Rational rhs = scan.rational();
      scan.expect_end();
      lp->add_row(std::move(name), std::move(terms), rel, std::move(rhs));
    } else {
      scan.fail("unknown directive '" + std::string(kw) + "'");
    }
  });
  if (!lp) throw ParseError(0, 0, "missing 'sense' line");
  return std::move(*lp);
}

LinearProgram read_lp(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_lp(in);
}

}  // namespace polybound
