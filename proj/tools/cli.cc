#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "polybound/classify.h"
#include "polybound/errors.h"
#include "polybound/flow_lift.h"
#include "polybound/instance.h"
#include "polybound/oracle.h"
#include "polybound/reductions.h"
#include "polybound/scc_solver.h"
#include "polybound/simple_solver.h"
#include "polybound/witness_io.h"

namespace polybound::cli {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int resolve_oracle_cap(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("POLYBOUND_ORACLE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > kMaxAttributes) {
      throw PreconditionError(std::string("POLYBOUND_ORACLE_CAP must be an "
                                          "integer in 1..64, got '") +
                              env + "'");
    }
    return static_cast<int>(v);
  }
  return kDefaultOracleCap;
}

std::string unbounded_line(const Instance& inst, int attribute) {
  AttrSet covered;
  for (const DifferenceConstraint& dc : inst.constraints()) {
    covered |= dc.y - dc.x;
  }
  std::string why = covered.contains(attribute)
                        ? "unreachable from the empty set"
                        : "unconstrained";
  return "unbounded: attribute " + std::to_string(attribute) + " " + why;
}

std::string components_line(const SccDecomposition& d) {
  std::string out = "components";
  for (AttrSet c : d.components) out += " " + c.to_string();
  return out;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---- classify ----

int cmd_classify(const std::string& file, std::ostream& out) {
  Instance inst = read_instance_file(file);
  InstanceClass cls = classify(inst);
  SccDecomposition d = scc_decompose(inst);
  out << "universe " << inst.n() << '\n';
  out << "constraints " << inst.k() << '\n';
  out << "simple " << yes_no(cls.is_simple) << '\n';
  out << "acyclic " << yes_no(cls.is_acyclic) << '\n';
  out << components_line(d) << '\n';
  out << "max_component_size " << d.max_component_size() << '\n';
  AttrSet reach = closure_from_empty(inst);
  out << "bounded " << yes_no(reach == inst.universe()) << '\n';
  for (int i = 0; i < inst.k(); ++i) {
    const ConstraintTags& t = cls.tags[i];
    out << "constraint " << i + 1 << (t.simple ? " simple" : " general");
    if (t.cardinality) out << " cardinality";
    if (t.functional_dependency) out << " fd";
    out << '\n';
  }
  return kOk;
}

// ---- bound ----

struct BoundOptions {
  std::string file;
  std::string method = "auto";
  bool witness = false;
  bool timing = false;
  bool exact_only = false;
  int oracle_cap = -1;
  int component_cap = kDefaultComponentCap;
};

int cmd_bound(const BoundOptions& o, std::ostream& out) {
  Instance inst = read_instance_file(o.file);
  std::string method = o.method;
  if (method == "auto") {
    InstanceClass cls = classify(inst);
    method = cls.is_simple ? "simple" : cls.is_acyclic ? "modular" : "scc";
  }
  const int cap = resolve_oracle_cap(o.oracle_cap);
  Stopwatch clock;
  BoundResult base;
  std::string witness;
  std::string extra;
  if (method == "simple") {
    SimpleResult r = simple_bound(inst);
    base = r;
    if (r.bounded && o.witness) {
      witness = render_dual_witness(lift(inst, r.delta).witness);
    }
  } else if (method == "modular") {
    ModularResult r = modular_bound(inst);
    base = r;
    if (r.bounded && o.witness) witness = render_modular(r.z);
  } else if (method == "coverage") {
    CoverageResult r = coverage_bound(inst, cap);
    base = r;
    if (r.bounded && o.witness) witness = render_coverage(r.lambda);
  } else if (method == "polymatroid") {
    PolymatroidResult r = polymatroid_bound(inst, cap);
    base = r;
    if (r.bounded && o.witness) witness = render_polymatroid(inst.n(), r.h);
  } else if (method == "scc") {
    SccResult r = scc_bound(inst, o.component_cap);
    base = r;
    extra = components_line(r.decomposition) + "\n";
    if (r.bounded && o.witness) witness = render_semimodular(r.witness);
  } else {
    throw PreconditionError("unknown method '" + method + "'");
  }
  const long long elapsed = clock.ms();

  out << "method " << method << '\n';
  out << extra;
  if (!base.bounded) {
    out << unbounded_line(inst, base.unbounded_attribute) << '\n';
    if (o.timing) out << "time_ms " << elapsed << '\n';
    return kVerdict;
  }
  out << "bound " << base.value << '\n';
  if (!o.exact_only) {
    out << "2^bound ≈ " << to_cardinality(base.value) << '\n';
  }
  out << witness;
  if (o.timing) out << "time_ms " << elapsed << '\n';
  return kOk;
}

// ---- compare ----

int cmd_compare(const std::string& file, int oracle_cap, std::ostream& out,
                std::ostream& err) {
  Instance inst = read_instance_file(file);
  const int cap = resolve_oracle_cap(oracle_cap);
  check_oracle_cap(inst.n(), cap);
  ModularResult m = modular_bound(inst);
  CoverageResult c = coverage_bound(inst, cap);
  PolymatroidResult p = polymatroid_bound(inst, cap);
  struct Row {
    const char* name;
    const BoundResult* r;
  };
  const Row rows[] = {{"modular", &m}, {"coverage", &c}, {"polymatroid", &p}};
  out << "method value gap_to_polymatroid relation\n";
  for (const Row& row : rows) {
    out << row.name << ' ';
    if (!row.r->bounded) {
      out << "unbounded";
      out << (p.bounded ? " - -" : " 0 equal");
    } else {
      out << row.r->value;
      if (p.bounded) {
        Rational gap = p.value - row.r->value;
        out << ' ' << gap << (gap.is_zero() ? " equal" : " strict");
      } else {
        out << " - strict";
      }
    }
    out << '\n';
  }
  // modular <= coverage <= polymatroid, with unbounded on top.
  auto le = [](const BoundResult& a, const BoundResult& b) {
    if (!b.bounded) return true;
    if (!a.bounded) return false;
    return a.value <= b.value;
  };
  if (!le(m, c) || !le(c, p)) {
    err << "internal error: bound chain violated\n";
    out << "chain violated\n";
    return kInternalError;
  }
  out << "chain ok\n";
  return kOk;
}

// ---- separate ----

int cmd_separate(const std::string& file, const std::string& delta_file,
                 std::ostream& out) {
  Instance inst = read_instance_file(file);
  std::vector<Rational> delta =
      delta_vector(read_witness_file(delta_file, inst.n()), inst.k());
  SeparationVerdict v = separate(inst, delta);
  if (v.feasible) {
    out << "feasible\n";
    return kOk;
  }
  out << "violated V=" << v.v.to_string() << " lhs=" << v.lhs << '\n';
  return kVerdict;
}

// ---- lift ----

int cmd_lift(const std::string& file, const std::string& delta_file,
             bool trace, std::ostream& out) {
  Instance inst = read_instance_file(file);
  std::vector<Rational> delta;
  if (delta_file.empty()) {
    SimpleResult r = simple_bound(inst);
    if (!r.bounded) {
      out << unbounded_line(inst, r.unbounded_attribute) << '\n';
      return kVerdict;
    }
    delta = r.delta;
  } else {
    delta = delta_vector(read_witness_file(delta_file, inst.n()), inst.k());
  }
  SeparationVerdict v = separate(inst, delta);
  if (!v.feasible) {
    out << "violated V=" << v.v.to_string() << " lhs=" << v.lhs << '\n';
    return kVerdict;
  }
  LiftResult r = lift(inst, delta);
  if (trace) {
    std::istringstream lines(r.trace.render());
    std::string line;
    while (std::getline(lines, line)) out << "# trace " << line << '\n';
  }
  out << render_dual_witness(r.witness);
  return kOk;
}

// ---- reduce ----

int cmd_reduce(const std::string& file, const std::string& target,
               std::ostream& out) {
  Instance inst = read_instance_file(file);
  if (target == "acyclic-fd") {
    out << render_instance(to_acyclic_plus_fd(inst));
  } else {
    out << render_instance(to_small_arity(inst));
  }
  return kOk;
}

// ---- gen ----

struct GenOptions {
  std::string hitting_set;
  std::string prefix;
  int n = 4;
  int k = 6;
  int max_x = 2;
  int max_extra = 2;
  uint64_t seed = 1;
  bool simple = false;
  bool acyclic = false;
  bool allow_unbounded = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (!o.hitting_set.empty()) {
    std::ifstream in(o.hitting_set);
    if (!in) throw Error("cannot open '" + o.hitting_set + "'");
    HittingSetInstance hs = parse_hitting_set(in);
    GadgetOutput g = hitting_set_gadget(hs);
    std::string inst_text = render_instance(g.instance);
    std::string delta_text = render_delta(g.delta_hat);
    if (o.prefix.empty()) {
      out << inst_text;
      std::istringstream lines(delta_text);
      std::string line;
      while (std::getline(lines, line)) out << "# " << line << '\n';
    } else {
      write_file(o.prefix + ".dc", inst_text);
      write_file(o.prefix + ".delta", delta_text);
      out << "wrote " << o.prefix << ".dc\n";
      out << "wrote " << o.prefix << ".delta\n";
    }
    return kOk;
  }
  RandomInstanceParams p;
  p.n = o.n;
  p.k = o.k;
  p.max_x = o.max_x;
  p.max_extra = o.max_extra;
  p.seed = o.seed;
  p.simple = o.simple;
  p.acyclic = o.acyclic;
  p.bounded = !o.allow_unbounded;
  std::string text = render_instance(random_instance(p));
  if (o.prefix.empty()) {
    out << text;
  } else {
    write_file(o.prefix + ".dc", text);
    out << "wrote " << o.prefix << ".dc\n";
  }
  return kOk;
}

// ---- verify ----

int cmd_verify(const std::string& file, const std::string& witness_file,
               std::ostream& out) {
  Instance inst = read_instance_file(file);
  WitnessFile w = read_witness_file(witness_file, inst.n());
  const bool dual = !w.delta.empty() || !w.sigma.empty() || !w.mu.empty();
  const bool poly = !w.h.empty();
  const bool cover = !w.lambda.empty();
  const bool modular = !w.z.empty();
  const bool semi = !w.components.empty() || !w.hc.empty();
  const int kinds = dual + poly + cover + modular + semi;
  if (kinds != 1) {
    throw PreconditionError(kinds == 0 ? "witness file is empty"
                                       : "witness file mixes witness kinds");
  }

  if (dual) {
    DualWitness dw = to_dual_witness(w, inst.k());
    WitnessVerdict v = verify_witness(inst, dw);
    if (!v.valid) {
      if (!v.negative.empty()) {
        out << "violated negative " << v.negative << '\n';
      } else {
        out << "violated Z=" << v.z.to_string() << " excess=" << v.excess
            << " required=" << v.required << '\n';
      }
      return kVerdict;
    }
    out << "valid\n";
    out << "cost " << total_cost(inst, dw.delta) << '\n';
    return kOk;
  }

  // Set-function witnesses: evaluate, then check each difference row.
  std::function<Rational(AttrSet)> eval;
  std::string shape_problem;
  std::vector<Rational> table;
  std::vector<Rational> z;
  SemimodularWitness sw;
  if (poly) {
    check_oracle_cap(inst.n(), resolve_oracle_cap(-1));
    table = polymatroid_table(w, inst.n());
    shape_problem = check_polymatroid(inst.n(), table);
    eval = [&](AttrSet s) { return table[s.mask()]; };
  } else if (cover) {
    for (const auto& [v, weight] : w.lambda) {
      if (v.empty()) shape_problem = "lambda on the empty set";
      if (weight.sign() < 0) shape_problem = "negative lambda " + v.to_string();
    }
    eval = [&](AttrSet s) { return coverage_value(w.lambda, s); };
  } else if (modular) {
    z = modular_vector(w, inst.n());
    for (int a = 1; a <= inst.n(); ++a) {
      if (z[a - 1].sign() < 0) shape_problem = "negative z " + std::to_string(a);
    }
    eval = [&](AttrSet s) {
      Rational sum;
      for (int a : s) sum += z[a - 1];
      return sum;
    };
  } else {
    sw = semimodular_witness(w);
    for (size_t j = 0; j < sw.components.size() && shape_problem.empty(); ++j) {
      std::string why = check_polymatroid(sw.components[j].size(), sw.tables[j]);
      if (!why.empty()) {
        shape_problem = "component " + sw.components[j].to_string() + ": " + why;
      }
    }
    AttrSet seen;
    for (AttrSet c : sw.components) {
      if (seen.intersects(c)) shape_problem = "components overlap";
      seen |= c;
    }
    if (seen != inst.universe()) {
      shape_problem = "components do not cover the universe";
    }
    eval = [&](AttrSet s) { return sw.value(s); };
  }
  if (!shape_problem.empty()) {
    out << "violated shape " << shape_problem << '\n';
    return kVerdict;
  }
  int first_bad = -1;
  for (int i = 0; i < inst.k(); ++i) {
    const DifferenceConstraint& dc = inst[i];
    Rational slack = dc.cost - (eval(dc.y) - eval(dc.x));
    out << "row " << i + 1 << " slack " << slack << '\n';
    if (slack.sign() < 0 && first_bad < 0) first_bad = i;
  }
  if (first_bad >= 0) {
    out << "violated constraint " << first_bad + 1 << '\n';
    return kVerdict;
  }
  out << "valid\n";
  out << "value " << eval(inst.universe()) - eval(AttrSet()) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cardinality bounds for difference constraints", "polybound"};
  app.require_subcommand(1);

  std::string file;
  std::string second;

  auto* classify_cmd = app.add_subcommand("classify", "Structural report");
  classify_cmd->add_option("instance", file, "Instance file")->required();

  BoundOptions bo;
  auto* bound_cmd = app.add_subcommand("bound", "Compute a bound");
  bound_cmd->add_option("instance", bo.file, "Instance file")->required();
  bound_cmd->add_option("--method", bo.method, "Bound to compute")
      ->check(CLI::IsMember(
          {"auto", "polymatroid", "modular", "coverage", "simple", "scc"}));
  bound_cmd->add_flag("--witness", bo.witness, "Print the witness");
  bound_cmd->add_flag("--timing", bo.timing, "Report wall-clock time");
  bound_cmd->add_flag("--exact-only", bo.exact_only,
                      "Omit the approximate 2^bound line");
  bound_cmd->add_option("--oracle-cap", bo.oracle_cap,
                        "Largest universe for the exponential programs");
  bound_cmd->add_option("--component-cap", bo.component_cap,
                        "Largest component for the scc method");

  int compare_cap = -1;
  auto* compare_cmd =
      app.add_subcommand("compare", "Modular, coverage and polymatroid side by side");
  compare_cmd->add_option("instance", file, "Instance file")->required();
  compare_cmd->add_option("--oracle-cap", compare_cap,
                          "Largest universe for the exponential programs");

  auto* separate_cmd =
      app.add_subcommand("separate", "Check a delta vector against the cut rows");
  separate_cmd->add_option("instance", file, "Instance file")->required();
  separate_cmd->add_option("delta", second, "Delta file")->required();

  bool trace = false;
  auto* lift_cmd =
      app.add_subcommand("lift", "Extend a feasible delta to a full dual witness");
  lift_cmd->add_option("instance", file, "Instance file")->required();
  lift_cmd->add_option("delta", second,
                       "Delta file (default: the optimal delta)");
  lift_cmd->add_flag("--trace", trace, "Emit every update as a comment line");

  std::string target;
  auto* reduce_cmd = app.add_subcommand("reduce", "Bound-preserving rewrite");
  reduce_cmd->add_option("instance", file, "Instance file")->required();
  reduce_cmd->add_option("--target", target, "Target form")
      ->required()
      ->check(CLI::IsMember({"acyclic-fd", "small-arity"}));

  GenOptions go;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("--hitting-set", go.hitting_set,
                      "Hitting-set file to turn into a gadget");
  gen_cmd->add_option("-o,--output", go.prefix,
                      "Write <prefix>.dc (and <prefix>.delta)");
  gen_cmd->add_option("--n", go.n, "Universe size")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--k", go.k, "Constraint count")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--max-x", go.max_x, "Largest |X|")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--max-extra", go.max_extra, "Largest |Y \\ X|")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", go.seed, "Random seed");
  gen_cmd->add_flag("--simple", go.simple, "Only |X| <= 1");
  gen_cmd->add_flag("--acyclic", go.acyclic, "Acyclic dependency graph");
  gen_cmd->add_flag("--allow-unbounded", go.allow_unbounded,
                    "Skip the reachability chain");

  auto* verify_cmd = app.add_subcommand("verify", "Check a witness file");
  verify_cmd->add_option("instance", file, "Instance file")->required();
  verify_cmd->add_option("witness", second, "Witness file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(file, out);
    if (bound_cmd->parsed()) return cmd_bound(bo, out);
    if (compare_cmd->parsed()) return cmd_compare(file, compare_cap, out, err);
    if (separate_cmd->parsed()) return cmd_separate(file, second, out);
    if (lift_cmd->parsed()) return cmd_lift(file, second, trace, out);
    if (reduce_cmd->parsed()) return cmd_reduce(file, target, out);
    if (gen_cmd->parsed()) return cmd_gen(go, out);
    if (verify_cmd->parsed()) return cmd_verify(file, second, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const LpError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace polybound::cli
