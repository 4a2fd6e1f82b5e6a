#include "polybound/oracle.h"

#include <algorithm>
#include <numeric>

#include "polybound/classify.h"
#include "polybound/errors.h"

namespace polybound {

const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kModular:
      return "modular";
    case BoundMethod::kCoverage:
      return "coverage";
    case BoundMethod::kPolymatroid:
      return "polymatroid";
  }
  return "?";
}

void check_oracle_cap(int n, int cap) {
  if (n > cap) {
    throw CapExceeded("universe size " + std::to_string(n) +
                      " exceeds the oracle cap of " + std::to_string(cap) +
                      "; use the simple or scc method, or raise the cap");
  }
}

std::map<AttrSet, Rational> compute_excess(const Instance& inst,
                                           const DualWitness& w) {
  std::map<AttrSet, Rational> ex;
  ex[AttrSet()];
  ex[inst.universe()];
  for (int i = 0; i < inst.k() && i < static_cast<int>(w.delta.size()); ++i) {
    if (w.delta[i].is_zero()) continue;
    ex[inst[i].y] += w.delta[i];
    ex[inst[i].x] -= w.delta[i];
  }
  for (const auto& [key, v] : w.sigma) {
    if (v.is_zero()) continue;
    ex[key.first & key.second] += v;
    ex[key.first | key.second] += v;
    ex[key.first] -= v;
    ex[key.second] -= v;
  }
  for (const auto& [key, v] : w.mu) {
    if (v.is_zero()) continue;
    ex[key.first] += v;
    ex[key.second] -= v;
  }
  return ex;
}

Rational total_cost(const Instance& inst, const std::vector<Rational>& delta) {
  Rational s;
  for (int i = 0; i < inst.k(); ++i) {
    if (!delta[i].is_zero()) s += inst[i].cost * delta[i];
  }
  return s;
}

namespace {

std::string h_name(AttrSet s) { return "h" + s.to_string(); }

uint64_t lattice_size(int n) { return uint64_t{1} << n; }

void add_h_variables(LinearProgram* lp, int n) {
  for (uint64_t m = 0; m < lattice_size(n); ++m) {
    lp->add_variable(h_name(AttrSet::from_mask(m)));
  }
}

void add_difference_rows(LinearProgram* lp, const Instance& inst) {
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    lp->add_row("diff" + std::to_string(i + 1),
                {{static_cast<int>(dc.y.mask()), 1},
                 {static_cast<int>(dc.x.mask()), -1}},
                Relation::kLessEqual, dc.cost);
  }
}

void set_h_objective(LinearProgram* lp, int n) {
  lp->set_objective(static_cast<int>(lattice_size(n) - 1), 1);
  lp->set_objective(0, -1);
}

// Variables of D in declaration order.
struct DVariable {
  enum Kind { kDelta, kSigma, kMu } kind;
  int index;  // constraint, for kDelta
  SetPair key;
};

std::vector<DVariable> d_variables(const Instance& inst) {
  std::vector<DVariable> vars;
  const uint64_t size = lattice_size(inst.n());
  for (int i = 0; i < inst.k(); ++i) vars.push_back({DVariable::kDelta, i, {}});
  for (uint64_t a = 0; a < size; ++a) {
    for (uint64_t b = a + 1; b < size; ++b) {
      AttrSet x = AttrSet::from_mask(a), y = AttrSet::from_mask(b);
      if (x.incomparable(y)) vars.push_back({DVariable::kSigma, -1, {x, y}});
    }
  }
  for (uint64_t b = 0; b < size; ++b) {
    AttrSet y = AttrSet::from_mask(b);
    for_each_subset(y, [&](AttrSet x) {
      if (x != y) vars.push_back({DVariable::kMu, -1, {x, y}});
    });
  }
  return vars;
}

std::string d_name(const DVariable& v) {
  switch (v.kind) {
    case DVariable::kDelta:
      return "delta" + std::to_string(v.index + 1);
    case DVariable::kSigma:
      return "sigma" + v.key.first.to_string() + "|" + v.key.second.to_string();
    case DVariable::kMu:
      return "mu" + v.key.first.to_string() + "<-" + v.key.second.to_string();
  }
  return {};
}

}  // namespace

LinearProgram build_lp_P(const Instance& inst, int cap) {
  check_oracle_cap(inst.n(), cap);
  const int n = inst.n();
  const uint64_t size = lattice_size(n);
  LinearProgram lp(Sense::kMaximize);
  add_h_variables(&lp, n);
  set_h_objective(&lp, n);
  for (uint64_t a = 0; a < size; ++a) {
    for (uint64_t b = a + 1; b < size; ++b) {
      AttrSet x = AttrSet::from_mask(a), y = AttrSet::from_mask(b);
      if (!x.incomparable(y)) continue;
      lp.add_row("sub" + x.to_string() + y.to_string(),
                 {{static_cast<int>((x | y).mask()), 1},
                  {static_cast<int>((x & y).mask()), 1},
                  {static_cast<int>(a), -1},
                  {static_cast<int>(b), -1}},
                 Relation::kLessEqual, 0);
    }
  }
  for (uint64_t b = 0; b < size; ++b) {
    AttrSet y = AttrSet::from_mask(b);
    for_each_subset(y, [&](AttrSet x) {
      if (x == y) return;
      lp.add_row("mono" + x.to_string() + y.to_string(),
                 {{static_cast<int>(x.mask()), 1}, {static_cast<int>(b), -1}},
                 Relation::kLessEqual, 0);
    });
  }
  add_difference_rows(&lp, inst);
  return lp;
}

LinearProgram build_lp_D(const Instance& inst, int cap) {
  check_oracle_cap(inst.n(), cap);
  const int n = inst.n();
  const uint64_t size = lattice_size(n);
  LinearProgram lp(Sense::kMinimize);
  std::vector<DVariable> vars = d_variables(inst);
  std::vector<std::vector<LpTerm>> rows(size);
  for (const DVariable& v : vars) {
    int id = lp.add_variable(d_name(v));
    switch (v.kind) {
      case DVariable::kDelta: {
        const DifferenceConstraint& dc = inst[v.index];
        lp.set_objective(id, dc.cost);
        rows[dc.y.mask()].push_back({id, 1});
        rows[dc.x.mask()].push_back({id, -1});
        break;
      }
      case DVariable::kSigma: {
        AttrSet x = v.key.first, y = v.key.second;
        rows[(x & y).mask()].push_back({id, 1});
        rows[(x | y).mask()].push_back({id, 1});
        rows[x.mask()].push_back({id, -1});
        rows[y.mask()].push_back({id, -1});
        break;
      }
      case DVariable::kMu:
        rows[v.key.first.mask()].push_back({id, 1});
        rows[v.key.second.mask()].push_back({id, -1});
        break;
    }
  }
  for (uint64_t z = 0; z < size; ++z) {
    Rational rhs = z == size - 1 ? Rational(1) : (z == 0 ? Rational(-1) : Rational(0));
    lp.add_row("excess" + AttrSet::from_mask(z).to_string(), std::move(rows[z]),
               Relation::kGreaterEqual, rhs);
  }
  return lp;
}

DualWitness witness_from_D(const Instance& inst, const LinearProgram& d,
                           const std::vector<Rational>& point) {
  std::vector<DVariable> vars = d_variables(inst);
  if (static_cast<int>(vars.size()) != d.num_variables()) {
    throw PreconditionError("program does not match the instance");
  }
  DualWitness w;
  w.delta.assign(inst.k(), Rational());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Rational& v = point[j];
    if (vars[j].kind == DVariable::kDelta) {
      w.delta[vars[j].index] = v;
    } else if (!v.is_zero()) {
      (vars[j].kind == DVariable::kSigma ? w.sigma : w.mu)[vars[j].key] = v;
    }
  }
  return w;
}

BoundResult closure_unbounded(const Instance& inst) {
  BoundResult r;
  AttrSet reach = closure_from_empty(inst);
  if (reach == inst.universe()) {
    r.bounded = true;
    return r;
  }
  r.bounded = false;
  r.growing = inst.universe() - reach;
  r.unbounded_attribute = r.growing.min_element();
  return r;
}

PolymatroidResult polymatroid_bound(const Instance& inst, int cap) {
  check_oracle_cap(inst.n(), cap);
  PolymatroidResult result;
  static_cast<BoundResult&>(result) = closure_unbounded(inst);
  if (!result.bounded) return result;

  // D restricted to the elemental hyperedges: sigma over pairs (S+a, S+b)
  // and mu over ([n]-a, [n]). Its dual is P with only the elemental Shannon
  // rows, which cut out the same polymatroid cone.
  const int n = inst.n();
  const uint64_t size = lattice_size(n);
  const uint64_t full = size - 1;
  LinearProgram lp(Sense::kMinimize);
  std::vector<std::vector<LpTerm>> rows(size);
  std::vector<SetPair> keys;
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    int id = lp.add_variable("delta" + std::to_string(i + 1));
    lp.set_objective(id, dc.cost);
    rows[dc.y.mask()].push_back({id, 1});
    rows[dc.x.mask()].push_back({id, -1});
  }
  for (int a = 1; a <= n; ++a) {
    uint64_t rest = full & ~(uint64_t{1} << (a - 1));
    int id = lp.add_variable("mu" + std::to_string(a));
    keys.push_back({AttrSet::from_mask(rest), AttrSet::from_mask(full)});
    rows[rest].push_back({id, 1});
    rows[full].push_back({id, -1});
  }
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      uint64_t ab = (uint64_t{1} << (a - 1)) | (uint64_t{1} << (b - 1));
      for_each_subset(AttrSet::from_mask(full & ~ab), [&](AttrSet s) {
        uint64_t m = s.mask();
        uint64_t ma = m | (uint64_t{1} << (a - 1));
        uint64_t mb = m | (uint64_t{1} << (b - 1));
        int id = lp.add_variable("sigma" + std::to_string(keys.size()));
        keys.push_back({AttrSet::from_mask(ma), AttrSet::from_mask(mb)});
        rows[m].push_back({id, 1});
        rows[m | ab].push_back({id, 1});
        rows[ma].push_back({id, -1});
        rows[mb].push_back({id, -1});
      });
    }
  }
  for (uint64_t z = 0; z < size; ++z) {
    Rational rhs = z == full ? Rational(1) : (z == 0 ? Rational(-1) : Rational(0));
    lp.add_row("", std::move(rows[z]), Relation::kGreaterEqual, rhs);
  }

  LpSolution sol = solve(lp, {.float_warm_start = true});
  result.pivots = sol.pivots;
  result.lp_rows = lp.num_rows();
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(std::string("polymatroid program ended ") +
                             to_string(sol.status) + " on a bounded instance");
  }
  result.value = sol.value;
  result.h.resize(size);
  for (uint64_t m = 0; m < size; ++m) result.h[m] = sol.dual[m] - sol.dual[0];

  DualWitness& w = result.witness;
  w.delta.assign(sol.primal.begin(), sol.primal.begin() + inst.k());
  for (std::size_t j = 0; j < keys.size(); ++j) {
    const Rational& v = sol.primal[inst.k() + j];
    if (v.is_zero()) continue;
    if (j < static_cast<std::size_t>(n)) {
      w.mu[keys[j]] = v;
    } else {
      w.sigma[keys[j]] = v;
    }
  }
  return result;
}

LinearProgram build_lp_coverage(const Instance& inst, int cap) {
  check_oracle_cap(inst.n(), cap);
  const uint64_t size = lattice_size(inst.n());
  LinearProgram lp(Sense::kMaximize);
  for (uint64_t v = 1; v < size; ++v) {
    int id = lp.add_variable("lambda" + AttrSet::from_mask(v).to_string());
    lp.set_objective(id, 1);
  }
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    std::vector<LpTerm> terms;
    for (uint64_t v = 1; v < size; ++v) {
      AttrSet s = AttrSet::from_mask(v);
      if (!s.intersects(dc.x) && s.intersects(dc.y)) {
        terms.push_back({static_cast<int>(v - 1), 1});
      }
    }
    lp.add_row("cover" + std::to_string(i + 1), std::move(terms),
               Relation::kLessEqual, dc.cost);
  }
  return lp;
}

CoverageResult coverage_bound(const Instance& inst, int cap) {
  check_oracle_cap(inst.n(), cap);
  CoverageResult result;
  static_cast<BoundResult&>(result) = closure_unbounded(inst);
  if (!result.bounded) return result;
  LinearProgram lp = build_lp_coverage(inst, cap);
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(std::string("coverage program ended ") +
                             to_string(sol.status) + " on a bounded instance");
  }
  result.value = sol.value;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!sol.primal[j].is_zero()) {
      result.lambda[AttrSet::from_mask(static_cast<uint64_t>(j) + 1)] =
          sol.primal[j];
    }
  }
  return result;
}

Rational coverage_value(const std::map<AttrSet, Rational>& lambda, AttrSet s) {
  Rational g;
  for (const auto& [v, w] : lambda) {
    if (v.intersects(s)) g += w;
  }
  return g;
}

LinearProgram build_lp_modular(const Instance& inst) {
  LinearProgram lp(Sense::kMaximize);
  for (int a = 1; a <= inst.n(); ++a) {
    int id = lp.add_variable("z" + std::to_string(a));
    lp.set_objective(id, 1);
  }
  for (int i = 0; i < inst.k(); ++i) {
    std::vector<LpTerm> terms;
    for (int a : inst[i].y - inst[i].x) terms.push_back({a - 1, 1});
    lp.add_row("mod" + std::to_string(i + 1), std::move(terms),
               Relation::kLessEqual, inst[i].cost);
  }
  return lp;
}

ModularResult modular_bound(const Instance& inst) {
  ModularResult result;
  AttrSet covered;
  for (const DifferenceConstraint& dc : inst.constraints()) covered |= dc.y - dc.x;
  if (covered != inst.universe()) {
    result.bounded = false;
    result.growing = inst.universe() - covered;
    result.unbounded_attribute = result.growing.min_element();
    return result;
  }
  LpSolution sol = solve(build_lp_modular(inst));
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(std::string("modular program ended ") +
                             to_string(sol.status));
  }
  result.bounded = true;
  result.value = sol.value;
  result.z = sol.primal;
  return result;
}

std::string check_polymatroid(int n, const std::vector<Rational>& h) {
  const uint64_t size = lattice_size(n);
  if (h.size() != size) return "table has the wrong size";
  if (!h[0].is_zero()) return "h({}) = " + h[0].to_string() + ", expected 0";
  for (uint64_t m = 0; m < size; ++m) {
    for (int a = 1; a <= n; ++a) {
      uint64_t bit = uint64_t{1} << (a - 1);
      if (m & bit) continue;
      if (h[m | bit] < h[m]) {
        return "not monotone at " + AttrSet::from_mask(m).to_string() + " + " +
               std::to_string(a);
      }
      for (int b = a + 1; b <= n; ++b) {
        uint64_t bit2 = uint64_t{1} << (b - 1);
        if (m & bit2) continue;
        if (h[m | bit] + h[m | bit2] < h[m | bit | bit2] + h[m]) {
          return "not submodular at " + AttrSet::from_mask(m).to_string() +
                 " with " + std::to_string(a) + "," + std::to_string(b);
        }
      }
    }
  }
  return {};
}

int first_violated_constraint(const Instance& inst,
                              const std::vector<Rational>& h) {
  for (int i = 0; i < inst.k(); ++i) {
    if (h[inst[i].y.mask()] - h[inst[i].x.mask()] > inst[i].cost) return i;
  }
  return -1;
}

std::string to_cardinality(const Rational& bound) {
  mpq_class b = bound.to_mpq();
  const mpz_class& p = b.get_num();
  const mpz_class& q = b.get_den();
  if (q == 1) {
    if (p >= 0) {
      mpz_class r;
      mpz_ui_pow_ui(r.get_mpz_t(), 2, p.get_ui());
      return r.get_str();
    }
  }
  if (!q.fits_ulong_p() || !p.fits_slong_p()) {
    throw PreconditionError("bound too large to render");
  }
  const unsigned long qq = q.get_ui();
  const long pp = p.get_si();
  // x = 2^p * 10^(3q); the scaled value 1000 * 2^(p/q) is x^(1/q).
  mpq_class x;
  {
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, 3 * qq);
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(pp < 0 ? -pp : pp));
    x = pp >= 0 ? mpq_class(two * ten) : mpq_class(ten, two);
    x.canonicalize();
  }
  mpz_class floor_x = x.get_num() / x.get_den();
  mpz_class m;
  mpz_root(m.get_mpz_t(), floor_x.get_mpz_t(), qq);
  // Round half to even: compare (m + 1/2)^q with x.
  mpz_class twice = 2 * m + 1;
  mpz_class lhs;
  mpz_pow_ui(lhs.get_mpz_t(), twice.get_mpz_t(), qq);
  mpz_class pow2q;
  mpz_ui_pow_ui(pow2q.get_mpz_t(), 2, qq);
  mpq_class rhs = x * mpq_class(pow2q);
  int c = cmp(mpq_class(lhs), rhs);
  if (c < 0 || (c == 0 && mpz_odd_p(m.get_mpz_t()))) m += 1;
  mpz_class whole = m / 1000;
  mpz_class frac = m % 1000;
  std::string f = frac.get_str();
  while (f.size() < 3) f = "0" + f;
  return whole.get_str() + "." + f;
}

}  // namespace polybound
