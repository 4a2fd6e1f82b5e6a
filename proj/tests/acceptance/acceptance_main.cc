// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "generators.h"
#include "oracles.h"
#include "polybound/classify.h"
#include "polybound/errors.h"
#include "polybound/flow_lift.h"
#include "polybound/lp.h"
#include "polybound/oracle.h"
#include "polybound/reductions.h"
#include "polybound/scc_solver.h"
#include "polybound/simple_solver.h"

namespace pb = polybound;
namespace pt = polybound::testing;

namespace {

// Thrown by check() with the first failure; a criterion stops there.
struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string seed_tag(uint64_t seed) { return " (seed " + std::to_string(seed) + ")"; }

// Same bounded/unbounded verdict and, when bounded, the same value.
bool same_bound(const pb::BoundResult& a, const pb::BoundResult& b) {
  if (a.bounded != b.bounded) return false;
  return !a.bounded || a.value == b.value;
}

std::string show(const pb::BoundResult& r) {
  return r.bounded ? r.value.to_string() : std::string("unbounded");
}

// ---- 1: strong duality of P and D ----

std::string criterion1() {
  int optimal = 0, unbounded = 0;
  for (uint64_t seed = 1; seed <= 120; ++seed) {
    std::mt19937_64 rng(seed);
    pb::RandomInstanceParams p;
    p.n = pt::uniform(rng, 1, 4);
    p.k = pt::uniform(rng, 1, 6);
    p.max_x = 2;
    p.max_extra = 2;
    p.bounded = seed % 4 != 0 && p.k * p.max_extra >= p.n;
    p.seed = seed;
    pb::Instance inst = pb::random_instance(p);
    pb::LpSolution primal = pb::solve(pb::build_lp_P(inst));
    pb::LpSolution dual = pb::solve(pb::build_lp_D(inst));
    check(primal.status != pb::LpStatus::kInfeasible,
          "P infeasible" + seed_tag(seed));
    if (primal.status == pb::LpStatus::kOptimal) {
      check(dual.status == pb::LpStatus::kOptimal,
            "P optimal but D " + std::string(pb::to_string(dual.status)) +
                seed_tag(seed));
      check(primal.value == dual.value,
            "value(P) " + primal.value.to_string() + " != value(D) " +
                dual.value.to_string() + seed_tag(seed));
      ++optimal;
    } else {
      check(dual.status == pb::LpStatus::kInfeasible,
            "P unbounded but D " + std::string(pb::to_string(dual.status)) +
                seed_tag(seed));
      ++unbounded;
    }
  }
  return std::to_string(optimal) + " optimal pairs, " +
         std::to_string(unbounded) + " unbounded/infeasible pairs";
}

// ---- 2 and 5: simple instances ----

std::vector<pb::Instance> simple_instances() {
  std::vector<pb::Instance> out;
  for (uint64_t seed = 1; seed <= 110; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    pb::RandomInstanceParams p;
    p.simple = true;
    p.n = pt::uniform(rng, 1, 8);
    p.max_extra = 2;
    p.k = pt::uniform(rng, (p.n + 1) / 2, 10);
    p.bounded = seed <= 100;
    p.seed = seed;
    out.push_back(pb::random_instance(p));
  }
  return out;
}

std::string criterion2(const std::vector<pb::Instance>& instances) {
  int bounded = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    const pb::Instance& inst = instances[i];
    check(pb::classify(inst).is_simple, "generator produced a general instance");
    pb::SimpleResult s = pb::simple_bound(inst);
    pb::PolymatroidResult p = pb::polymatroid_bound(inst);
    pb::CoverageResult c = pb::coverage_bound(inst);
    std::string tag = " (instance " + std::to_string(i + 1) + ")";
    check(same_bound(s, p), "simple " + show(s) + " != polymatroid " + show(p) + tag);
    check(same_bound(c, p), "coverage " + show(c) + " != polymatroid " + show(p) + tag);
    bounded += s.bounded;
  }
  return std::to_string(instances.size()) + " instances (" +
         std::to_string(bounded) + " bounded), all three agree";
}

std::string criterion5(const std::vector<pb::Instance>& instances) {
  int lifted = 0, chunks = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    const pb::Instance& inst = instances[i];
    pb::SimpleResult s = pb::simple_bound(inst);
    if (!s.bounded) continue;
    std::string tag = " (instance " + std::to_string(i + 1) + ")";
    pb::LiftResult r;
    try {
      r = pb::lift(inst, s.delta);
    } catch (const pb::InvariantViolation& e) {
      throw Failure{std::string("invariant: ") + e.what() + tag};
    }
    pb::WitnessVerdict v = pb::verify_witness(inst, r.witness);
    check(v.valid, "lifted witness invalid at " + v.z.to_string() + tag);
    check(r.witness.delta == s.delta, "lift changed delta" + tag);
    pb::Rational cost = pb::total_cost(inst, r.witness.delta);
    check(cost == s.value,
          "cost " + cost.to_string() + " != bound " + s.value.to_string() + tag);
    pb::DualWitness replayed = r.trace.replay(s.delta);
    check(replayed.sigma == r.witness.sigma && replayed.mu == r.witness.mu,
          "trace replay differs" + tag);
    // Lift the same delta from an explicit path decomposition as well.
    pb::PathDecomposition pd = pb::decompose_flow(inst, s.graph, s.flows);
    for (const auto& paths : pd.paths) {
      for (const pb::FlowPath& path : paths) {
        check(path.units.is_integer() && path.units.sign() > 0,
              "path units not a positive integer" + tag);
      }
    }
    pb::LiftResult r2 = pb::lift(inst, s.delta, pd);
    check(pb::verify_witness(inst, r2.witness).valid,
          "lift from decomposition invalid" + tag);
    ++lifted;
    chunks += r.chunks;
  }
  return std::to_string(lifted) + " witnesses valid, cost == bound, " +
         std::to_string(chunks) + " forward chunks";
}

// ---- 3: acyclic equality ----

std::string criterion3() {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(2000 + seed);
    pb::RandomInstanceParams p;
    p.acyclic = true;
    p.n = pt::uniform(rng, 1, 8);
    p.max_x = 2;
    p.max_extra = 2;
    p.k = pt::uniform(rng, (p.n + 1) / 2, 10);
    p.seed = seed;
    pb::Instance inst = pb::random_instance(p);
    check(pb::classify(inst).is_acyclic, "generator produced a cycle" + seed_tag(seed));
    pb::ModularResult m = pb::modular_bound(inst);
    pb::PolymatroidResult h = pb::polymatroid_bound(inst);
    check(same_bound(m, h),
          "modular " + show(m) + " != polymatroid " + show(h) + seed_tag(seed));
  }
  return "100 acyclic instances, modular == polymatroid";
}

// ---- 4: scc solver ----

std::string criterion4() {
  int multi = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(3000 + seed);
    pb::RandomInstanceParams p;
    p.n = pt::uniform(rng, 1, 8);
    p.max_x = 3;
    p.max_extra = 2;
    p.k = pt::uniform(rng, (p.n + 1) / 2, 10);
    p.seed = seed;
    pb::Instance inst = pb::random_instance(p);
    pb::SccResult s = pb::scc_bound(inst);
    pb::PolymatroidResult h = pb::polymatroid_bound(inst);
    check(same_bound(s, h),
          "scc " + show(s) + " != polymatroid " + show(h) + seed_tag(seed));
    if (s.bounded) {
      std::string why = pb::check_semimodular(inst, s.witness);
      check(why.empty(), "scc witness: " + why + seed_tag(seed));
      check(s.witness.value(inst.universe()) == s.value,
            "scc witness value differs" + seed_tag(seed));
    }
    multi += s.decomposition.size() > 1;
  }
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    pb::RandomInstanceParams p;
    p.acyclic = true;
    p.n = 2 + static_cast<int>(seed % 7);
    p.k = p.n + 2;
    p.seed = 4000 + seed;
    pb::Instance inst = pb::random_instance(p);
    pb::SccResult s = pb::scc_bound(inst);
    pb::ModularResult m = pb::modular_bound(inst);
    check(same_bound(s, m),
          "acyclic: scc " + show(s) + " != modular " + show(m) + seed_tag(seed));
  }
  return "100 general instances (" + std::to_string(multi) +
         " with several components) match polymatroid, 40 acyclic match modular";
}

// ---- 6: separation oracle ----

std::string criterion6() {
  int feasible = 0, violated = 0;
  for (int n = 1; n <= 10; ++n) {
    for (uint64_t rep = 0; rep < 2; ++rep) {
      uint64_t seed = 5000 + 10 * n + rep;
      std::mt19937_64 rng(seed);
      pb::RandomInstanceParams p;
      p.simple = true;
      p.n = n;
      p.max_extra = 3;
      p.k = pt::uniform(rng, (n + 2) / 3, 14);
      p.seed = seed;
      pb::Instance inst = pb::random_instance(p);
      pb::SimpleFlowGraph g = pb::build_graph(inst);
      pb::SimpleResult opt = pb::simple_bound(inst);
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<pb::Rational> delta;
        if (trial % 3 == 0 && opt.bounded) {
          // Near the optimum: the interesting boundary cases.
          delta = opt.delta;
          int i = pt::uniform(rng, 0, inst.k() - 1);
          pb::Rational shift(pt::uniform(rng, -2, 2), 8);
          delta[i] = pb::Rational::max(pb::Rational(0), delta[i] + shift);
        } else {
          delta = pt::random_delta(rng, inst.k(), 6);
        }
        pb::SeparationVerdict v = pb::separate(inst, g, delta);
        std::vector<pb::AttrSet> rows = pt::violated_ds_rows(inst, delta);
        std::string tag = seed_tag(seed) + " trial " + std::to_string(trial);
        check(v.feasible == rows.empty(), "verdict differs from row scan" + tag);
        if (!v.feasible) {
          check(!v.v.empty() && v.v.subset_of(inst.universe()),
                "bad violating set" + tag);
          mpq_class lhs = pt::ds_row_sum(inst, delta, v.v);
          check(lhs < 1, "returned set " + v.v.to_string() + " is not violated" + tag);
          check(v.lhs.to_mpq() == lhs, "reported lhs differs" + tag);
          ++violated;
        } else {
          ++feasible;
        }
      }
    }
  }
  return "2000 delta vectors on n = 1..10 (" + std::to_string(feasible) +
         " feasible, " + std::to_string(violated) + " violated) match the row scan";
}

// ---- 7: reductions ----

bool acyclic_fd_shape(const pb::Instance& in, const pb::Instance& out,
                      std::string* why) {
  const int n = in.n();
  if (out.n() != 2 * n || out.k() != in.k() + 2 * n) {
    *why = "size";
    return false;
  }
  const pb::AttrSet xs = pb::AttrSet::full(n);
  const pb::AttrSet ys = pb::AttrSet::full(2 * n) - xs;
  std::vector<pb::DifferenceConstraint> positive;
  for (const pb::DifferenceConstraint& dc : out.constraints()) {
    const bool fd = dc.cost.is_zero();
    const bool split = dc.x.subset_of(xs) && (dc.y - dc.x).subset_of(ys);
    if (!split && !fd) {
      *why = "constraint " + dc.x.to_string() + " -> " + dc.y.to_string();
      return false;
    }
    if (!fd) positive.push_back(dc);
  }
  if (!pb::classify(pb::Instance(2 * n, positive)).is_acyclic) {
    *why = "non-dependency part has a cycle";
    return false;
  }
  return true;
}

bool small_arity_shape(const pb::Instance& out, std::string* why) {
  for (const pb::DifferenceConstraint& dc : out.constraints()) {
    const int x = dc.x.size(), y = dc.y.size();
    bool ok = x <= 2 && y <= 3;
    if (y == 3) ok = ok && x == 2 && dc.cost.is_zero();
    if (y == 2) ok = ok && x == 1;
    if (!ok) {
      *why = dc.x.to_string() + " -> " + dc.y.to_string();
      return false;
    }
  }
  return true;
}

std::string criterion7() {
  int count61 = 0, count62 = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(6000 + seed);
    pb::RandomInstanceParams p;
    p.n = seed <= 6 ? 5 : pt::uniform(rng, 1, 4);
    p.max_x = 2;
    p.max_extra = 2;
    p.k = seed <= 6 ? 4 : pt::uniform(rng, (p.n + 1) / 2, 5);
    p.seed = seed;
    pb::Instance inst = pb::random_instance(p);
    pb::Instance out = pb::to_acyclic_plus_fd(inst);
    std::string why;
    check(acyclic_fd_shape(inst, out, &why), "acyclic+FD shape: " + why + seed_tag(seed));
    pb::PolymatroidResult a = pb::polymatroid_bound(inst);
    pb::PolymatroidResult b = pb::polymatroid_bound(out);
    check(same_bound(a, b), "acyclic-fd: " + show(a) + " became " + show(b) + seed_tag(seed));
    ++count61;
  }
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(7000 + seed);
    pb::RandomInstanceParams p;
    p.n = pt::uniform(rng, 2, 4);
    p.max_x = 2;
    p.max_extra = 2;
    p.k = pt::uniform(rng, (p.n + 1) / 2, 4);
    p.seed = seed;
    pb::Instance inst = pb::random_instance(p);
    int iterations = 0;
    pb::Instance out = pb::to_small_arity(inst, &iterations);
    std::string why;
    check(small_arity_shape(out, &why), "small-arity shape: " + why + seed_tag(seed));
    check(iterations <= 2 * inst.n() * inst.k(),
          "too many merges: " + std::to_string(iterations) + seed_tag(seed));
    pb::PolymatroidResult a = pb::polymatroid_bound(inst);
    pb::PolymatroidResult b = pb::polymatroid_bound(out);
    check(same_bound(a, b), "small-arity: " + show(a) + " became " + show(b) + seed_tag(seed));
    ++count62;
  }
  return std::to_string(count61) + " acyclic-fd and " + std::to_string(count62) +
         " small-arity reductions preserve the bound";
}

// ---- 8: hitting-set gadget ----

void check_gadget(const pb::HittingSetInstance& hs, const std::string& tag) {
  pb::GadgetOutput g = pb::hitting_set_gadget(hs);
  pb::MembershipVerdict v = pb::check_membership(g.instance, g.delta_hat);
  const bool hitting = pb::brute_force_hitting_set(hs);
  const int min_size = pt::min_hitting_set(hs);
  check(hitting == (min_size <= hs.budget), "brute force disagrees with enumeration" + tag);
  check(v.inside == !hitting, "membership " + std::string(v.inside ? "inside" : "outside") +
                                  " but hitting set " + (hitting ? "exists" : "absent") + tag);
  check(v.inside == pt::reference_inside(g.instance, g.delta_hat),
        "membership differs from reference" + tag);
  std::vector<pb::Rational> scaled = g.delta_hat;
  for (pb::Rational& d : scaled) d *= hs.budget + 1;
  check(pb::check_membership(g.instance, scaled).inside, "scaled delta outside" + tag);
}

std::string criterion8() {
  long long exhaustive = 0;
  for (int e = 1; e <= 5; ++e) {
    const int subsets = (1 << e) - 1;
    // Multisets of m nonempty subsets, m = 1..4, as nondecreasing index lists.
    for (int m = 1; m <= 4; ++m) {
      std::vector<int> idx(m, 1);
      while (true) {
        pb::HittingSetInstance hs;
        hs.elements = e;
        for (int i : idx) hs.sets.push_back(pb::AttrSet::from_mask(i));
        for (int budget = 1; budget <= e; ++budget) {
          hs.budget = budget;
          check_gadget(hs, " (exhaustive e=" + std::to_string(e) + ")");
          ++exhaustive;
        }
        int pos = m - 1;
        while (pos >= 0 && idx[pos] == subsets) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < m; ++j) idx[j] = idx[pos];
      }
    }
  }
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(8000 + seed);
    pb::HittingSetInstance hs;
    hs.elements = pt::uniform(rng, 1, 8);
    int m = pt::uniform(rng, 1, 8);
    for (int i = 0; i < m; ++i) {
      hs.sets.push_back(pb::AttrSet::from_mask(
          static_cast<uint64_t>(pt::uniform(rng, 1, (1 << hs.elements) - 1))));
    }
    hs.budget = pt::uniform(rng, 1, hs.elements);
    check_gadget(hs, seed_tag(seed));
  }
  return std::to_string(exhaustive) + " exhaustive and 50 random gadgets agree";
}

// ---- 9: postal instance ----

std::string criterion9() {
  pb::Instance inst = pt::postal_instance();
  pb::LpSolution p = pb::solve(pb::build_lp_P(inst));
  pb::LpSolution d = pb::solve(pb::build_lp_D(inst));
  pb::SimpleResult s = pb::simple_bound(inst);
  check(p.status == pb::LpStatus::kOptimal && d.status == pb::LpStatus::kOptimal &&
            s.bounded,
        "some method did not reach an optimum");
  check(p.value == d.value && d.value == s.value,
        "P " + p.value.to_string() + ", D " + d.value.to_string() + ", simple " +
            s.value.to_string());
  std::ostringstream out, err;
  int rc = pb::cli::run({"bound", POLYBOUND_POSTAL_FILE}, out, err);
  check(rc == 0, "bound command exit " + std::to_string(rc) + ": " + err.str());
  const std::string report = out.str();
  check(report.find("bound " + s.value.to_string() + "\n") != std::string::npos,
        "report lacks the exact bound");
  const std::string prefix = "2^bound ≈ ";
  size_t at = report.find(prefix);
  check(at != std::string::npos, "report lacks 2^bound");
  std::string approx = report.substr(at + prefix.size());
  approx = approx.substr(0, approx.find('\n'));
  return "bound " + s.value.to_string() + " from P, D and flows; 2^bound ≈ " + approx;
}

// ---- 10: scale ----

std::string criterion10() {
  pb::RandomInstanceParams p;
  p.simple = true;
  p.n = 30;
  p.k = 60;
  p.max_extra = 3;
  p.seed = 10;
  pb::Instance inst = pb::random_instance(p);
  auto t0 = std::chrono::steady_clock::now();
  pb::SimpleResult s = pb::simple_bound(inst);
  double simple_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  check(s.bounded, "simple instance unexpectedly unbounded");
  // Certificate: delta feasible for every cut row, and the cut multipliers
  // form a feasible dual of equal value.
  check(pb::separate(inst, s.delta).feasible, "delta infeasible");
  check(pb::total_cost(inst, s.delta) == s.value, "cost of delta differs from value");
  pb::Rational dual_value;
  std::vector<pb::Rational> load(inst.k());
  for (size_t r = 0; r < s.cut_sets.size(); ++r) {
    const pb::Rational& y = s.cut_duals[r];
    check(y.sign() >= 0, "negative cut multiplier");
    dual_value += y;
    for (int i = 0; i < inst.k(); ++i) {
      if (!inst[i].x.intersects(s.cut_sets[r]) && inst[i].y.intersects(s.cut_sets[r])) {
        load[i] += y;
      }
    }
  }
  for (int i = 0; i < inst.k(); ++i) {
    check(load[i] <= inst[i].cost, "cut multipliers exceed cost " + std::to_string(i + 1));
  }
  check(dual_value == s.value, "dual value " + dual_value.to_string() + " != " +
                                   s.value.to_string());
  check(simple_s <= 120, "simple_bound took " + std::to_string(simple_s) + " s");

  pb::Instance big = pt::block_instance(4, 6, 3, 24);
  pb::SccDecomposition d = pb::scc_decompose(big);
  check(big.n() == 24 && d.max_component_size() == 6, "block instance shape");
  t0 = std::chrono::steady_clock::now();
  pb::SccResult r = pb::scc_bound(big);
  double scc_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  check(r.bounded, "block instance unexpectedly unbounded");
  std::string why = pb::check_semimodular(big, r.witness);
  check(why.empty(), "scc witness: " + why);
  check(r.witness.value(big.universe()) == r.value, "scc witness value differs");
  check(scc_s <= 120, "scc_bound took " + std::to_string(scc_s) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "simple n=30 k=60: %s in %.2f s; scc n=24 (4 components of 6): %s in %.2f s",
                s.value.to_string().c_str(), simple_s, r.value.to_string().c_str(), scc_s);
  return buf;
}

struct Criterion {
  int id;
  double limit_s;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  std::vector<pb::Instance> simple;
  const std::vector<Criterion> criteria = {
      {1, 60, criterion1},
      {2, 300,
       [&] {
         simple = simple_instances();
         return criterion2(simple);
       }},
      {3, 120, criterion3},
      {4, 300, criterion4},
      {5, 300,
       [&] {
         if (simple.empty()) simple = simple_instances();
         return criterion5(simple);
       }},
      {6, 120, criterion6},
      {7, 600, criterion7},
      {8, 120, criterion8},
      {9, 5, criterion9},
      {10, 240, criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.limit_s) {
      ok = false;
      detail += "; over the time limit";
    }
    failures += !ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, " [%.1f s, limit %.0f s]", secs, c.limit_s);
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - "
              << detail << timing << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
