#include "polybound/reductions.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "polybound/errors.h"
#include "text_scan.h"

namespace polybound {

Instance to_acyclic_plus_fd(const Instance& inst) {
  const int n = inst.n();
  if (2 * n > kMaxAttributes) {
    throw CapExceeded("doubling a universe of " + std::to_string(n) +
                      " attributes passes the limit of " +
                      std::to_string(kMaxAttributes));
  }
  auto x_copy = [](AttrSet s) { return s; };
  auto y_copy = [n](AttrSet s) { return AttrSet::from_mask(s.mask() << n); };
  std::vector<DifferenceConstraint> out;
  for (int i = 1; i <= n; ++i) {
    AttrSet pair = AttrSet::of({i, n + i});
    out.push_back({AttrSet::singleton(i), pair, Rational()});
    out.push_back({AttrSet::singleton(n + i), pair, Rational()});
  }
  for (const DifferenceConstraint& dc : inst.constraints()) {
    AttrSet x = x_copy(dc.x);
    out.push_back({x, x | y_copy(dc.y), dc.cost});
  }
  return Instance(2 * n, std::move(out));
}

namespace {

// The two smallest members of s (which has at least two).
std::pair<int, int> lowest_pair(AttrSet s) {
  int a = s.min_element();
  int b = s.without(a).min_element();
  return {a, b};
}

}  // namespace

Instance to_small_arity(const Instance& inst, int* iterations) {
  int n = inst.n();
  std::vector<DifferenceConstraint> cons = inst.constraints();
  int count = 0;
  while (true) {
    int pick = -1;
    bool in_x = false;
    std::pair<int, int> pair;
    // Rules in priority order; the first matching constraint wins.
    for (int rule = 1; rule <= 5 && pick < 0; ++rule) {
      for (int i = 0; i < static_cast<int>(cons.size()); ++i) {
        const DifferenceConstraint& dc = cons[i];
        const int sx = dc.x.size();
        const int sy = dc.y.size();
        bool hit = false;
        switch (rule) {
          case 1:
            hit = sx > 2;
            in_x = true;
            break;
          case 2:
            hit = sy > 3;
            in_x = false;
            break;
          case 3:
            hit = sx == 2 && sy == 3 && dc.cost.sign() > 0;
            in_x = true;
            break;
          case 4:
            hit = sy == 3 && sx <= 1;
            in_x = false;
            break;
          case 5:
            hit = sy == 2 && sx == 0;
            in_x = false;
            break;
        }
        if (hit) {
          pick = i;
          pair = lowest_pair(in_x ? dc.x : dc.y - dc.x);
          break;
        }
      }
    }
    if (pick < 0) break;

    if (n + 1 > kMaxAttributes) {
      throw CapExceeded("arity reduction needs more than " +
                        std::to_string(kMaxAttributes) + " attributes");
    }
    const int fresh = ++n;
    const auto [a, b] = pair;
    const AttrSet ab = AttrSet::of({a, b});
    DifferenceConstraint& dc = cons[pick];
    if (in_x) dc.x = (dc.x - ab).with(fresh);
    dc.y = (dc.y - ab).with(fresh);
    cons.push_back({ab, ab.with(fresh), Rational()});
    cons.push_back({AttrSet::singleton(fresh), AttrSet::of({fresh, a}), Rational()});
    cons.push_back({AttrSet::singleton(fresh), AttrSet::of({fresh, b}), Rational()});
    ++count;
  }
  if (iterations != nullptr) *iterations = count;
  return Instance(n, std::move(cons));
}

void validate(const HittingSetInstance& hs) {
  if (hs.elements < 1) throw InvalidInstance("need at least one element");
  if (hs.budget < 1) throw InvalidInstance("budget must be at least 1");
  const AttrSet ground = AttrSet::full(std::min(hs.elements, kMaxAttributes));
  for (size_t i = 0; i < hs.sets.size(); ++i) {
    if (hs.sets[i].empty()) {
      throw InvalidInstance("set " + std::to_string(i + 1) + " is empty");
    }
    if (!hs.sets[i].subset_of(ground)) {
      throw InvalidInstance("set " + std::to_string(i + 1) +
                            " leaves the ground set");
    }
  }
}

HittingSetInstance parse_hitting_set(std::istream& in) {
  HittingSetInstance hs;
  bool have_budget = false;
  detail::for_each_significant_line(in, [&](detail::LineScanner& scan) {
    scan.skip_space();
    int col = scan.column();
    std::string_view kw = scan.keyword();
    if (hs.elements == 0) {
      if (kw != "elements") {
        throw ParseError(scan.line(), col, "expected 'elements <count>'");
      }
      long long v = scan.integer();
      if (v < 1 || v > kMaxAttributes - 1) {
        throw ParseError(scan.line(), col, "element count out of range");
      }
      hs.elements = static_cast<int>(v);
    } else if (kw == "set") {
      scan.skip_space();
      int scol = scan.column();
      AttrSet s = scan.attr_set(hs.elements);
      if (s.empty()) throw ParseError(scan.line(), scol, "empty set");
      hs.sets.push_back(s);
    } else if (kw == "budget") {
      long long v = scan.integer();
      if (v < 1 || v > 1000000) {
        throw ParseError(scan.line(), col, "budget must be positive");
      }
      hs.budget = static_cast<int>(v);
      have_budget = true;
    } else {
      throw ParseError(scan.line(), col, "expected 'set' or 'budget'");
    }
    scan.expect_end();
  });
  if (hs.elements == 0) throw ParseError(0, 0, "missing 'elements' line");
  if (!have_budget) throw ParseError(0, 0, "missing 'budget' line");
  return hs;
}

HittingSetInstance parse_hitting_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hitting_set(in);
}

std::string render_hitting_set(const HittingSetInstance& hs) {
  std::ostringstream os;
  os << "elements " << hs.elements << '\n';
  for (AttrSet s : hs.sets) os << "set " << s.to_string() << '\n';
  os << "budget " << hs.budget << '\n';
  return os.str();
}

GadgetOutput hitting_set_gadget(const HittingSetInstance& hs) {
  validate(hs);
  if (hs.elements + 1 > kMaxAttributes) {
    throw CapExceeded("gadget needs " + std::to_string(hs.elements + 1) +
                      " attributes");
  }
  const int star = hs.elements + 1;
  const AttrSet all = AttrSet::full(star);
  const Rational m(static_cast<long long>(hs.sets.size()));
  std::vector<DifferenceConstraint> cons;
  GadgetOutput out;
  for (int e = 1; e <= hs.elements; ++e) {
    cons.push_back({AttrSet(), AttrSet::singleton(e), Rational(1)});
    out.delta_hat.push_back(Rational(1, hs.budget + 1));
  }
  for (AttrSet s : hs.sets) {
    cons.push_back({s, all, Rational(1)});
    out.delta_hat.push_back(m);
  }
  cons.push_back({AttrSet::singleton(star), all, Rational(1)});
  out.delta_hat.push_back(m);
  out.instance = Instance(star, std::move(cons));
  return out;
}

Rational membership_sum(const Instance& inst,
                        const std::vector<Rational>& delta_hat, AttrSet w) {
  Rational sum;
  for (int i = 0; i < inst.k(); ++i) {
    if (inst[i].x.subset_of(w) && !inst[i].y.subset_of(w)) sum += delta_hat[i];
  }
  return sum;
}

MembershipVerdict check_membership(const Instance& inst,
                                   const std::vector<Rational>& delta_hat) {
  if (inst.n() > kMembershipCap) {
    throw CapExceeded("membership check is limited to " +
                      std::to_string(kMembershipCap) + " attributes");
  }
  if (static_cast<int>(delta_hat.size()) != inst.k()) {
    throw PreconditionError("expected one delta value per constraint");
  }
  const uint64_t full = inst.universe().mask();
  MembershipVerdict v;
  bool first = true;
  for (uint64_t m = 0; m < full; ++m) {
    AttrSet w = AttrSet::from_mask(m);
    Rational l = membership_sum(inst, delta_hat, w);
    if (first || l < v.l_min) {
      v.l_min = l;
      v.w = w;
      first = false;
    }
  }
  v.inside = v.l_min >= 1;
  return v;
}

bool brute_force_hitting_set(const HittingSetInstance& hs) {
  if (hs.elements > kMembershipCap) {
    throw CapExceeded("hitting-set search is limited to " +
                      std::to_string(kMembershipCap) + " elements");
  }
  const uint64_t size = uint64_t{1} << hs.elements;
  for (uint64_t m = 0; m < size; ++m) {
    AttrSet pick = AttrSet::from_mask(m);
    if (pick.size() > hs.budget) continue;
    bool hits = true;
    for (AttrSet s : hs.sets) {
      if (!s.intersects(pick)) {
        hits = false;
        break;
      }
    }
    if (hits) return true;
  }
  return false;
}

namespace {

// Reproducible across standard libraries: only the engine is standardized,
// so ranges are drawn by hand.
class Draw {
 public:
  explicit Draw(uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>* v) {
    for (int i = static_cast<int>(v->size()) - 1; i > 0; --i) {
      std::swap((*v)[i], (*v)[uniform(0, i)]);
    }
  }

  // count distinct members of pool, or all of them when pool is smaller.
  AttrSet sample(std::vector<int> pool, int count) {
    shuffle(&pool);
    AttrSet out;
    for (int i = 0; i < count && i < static_cast<int>(pool.size()); ++i) {
      out = out.with(pool[i]);
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

Instance random_instance(const RandomInstanceParams& p) {
  if (p.n < 1 || p.n > kMaxAttributes) {
    throw PreconditionError("n must lie in 1..64");
  }
  if (p.k < 0 || p.min_x < 0 || p.min_x > p.max_x || p.min_extra < 1 ||
      p.min_extra > p.max_extra || p.max_cost_numerator < 0 ||
      p.max_cost_denominator < 1) {
    throw PreconditionError("inconsistent random instance parameters");
  }
  const int n = p.n;
  const int max_x = p.simple ? std::min(p.max_x, 1) : p.max_x;
  const int min_x = std::min(p.min_x, max_x);
  if (p.bounded && static_cast<long long>(p.k) * p.max_extra < n) {
    throw PreconditionError("k * max_extra < n: cannot reach every attribute");
  }

  Draw draw(p.seed);
  // Acyclic instances only add edges forward in this order.
  std::vector<int> order(n);
  for (int a = 1; a <= n; ++a) order[a - 1] = a;
  if (p.acyclic) draw.shuffle(&order);
  std::vector<int> pos(n + 1);
  for (int r = 0; r < n; ++r) pos[order[r]] = r;
  auto last_pos = [&](AttrSet x) {
    int best = -1;
    for (int a : x) best = std::max(best, pos[a]);
    return best;
  };
  // Attributes allowed in Y \ X given X.
  auto heads = [&](AttrSet x, AttrSet among) {
    std::vector<int> out;
    int after = p.acyclic ? last_pos(x) : -1;
    for (int a : among - x) {
      if (pos[a] > after) out.push_back(a);
    }
    return out;
  };
  auto members = [](AttrSet s) { return s.elements(); };
  auto cost = [&]() {
    int num = draw.uniform(0, p.max_cost_numerator);
    int den = draw.uniform(1, p.max_cost_denominator);
    return Rational(num, den);
  };

  const AttrSet universe = AttrSet::full(n);
  std::vector<DifferenceConstraint> cons;
  if (p.bounded) {
    // A chain of constraints that reaches every attribute from the empty set.
    AttrSet reached;
    while (reached != universe) {
      const int slots = p.k - static_cast<int>(cons.size());
      const int missing = n - reached.size();
      int sx = draw.uniform(std::min(min_x, reached.size()),
                            std::min(max_x, reached.size()));
      AttrSet x = draw.sample(members(reached), sx);
      int lo = std::max(1, missing - (slots - 1) * p.max_extra);
      int fresh_count = draw.uniform(lo, std::min(p.max_extra, missing));
      AttrSet fresh;
      if (p.acyclic) {
        // reached is a prefix of the order.
        for (int r = reached.size(); r < reached.size() + fresh_count; ++r) {
          fresh = fresh.with(order[r]);
        }
      } else {
        fresh = draw.sample(members(universe - reached), fresh_count);
      }
      int total = draw.uniform(std::max(p.min_extra, fresh_count),
                               std::max(p.max_extra, fresh_count));
      AttrSet more = draw.sample(heads(x, reached), total - fresh_count);
      cons.push_back({x, x | fresh | more, cost()});
      reached |= fresh;
    }
  }
  int misses = 0;
  while (static_cast<int>(cons.size()) < p.k) {
    int sx = std::min(draw.uniform(min_x, max_x), n - 1);
    AttrSet x = draw.sample(members(universe), sx);
    std::vector<int> pool = heads(x, universe);
    if (pool.empty()) {
      if (++misses > 10000) {
        throw PreconditionError("cannot draw constraints with these flags");
      }
      continue;
    }
    int extra = draw.uniform(p.min_extra, p.max_extra);
    AttrSet y = x | draw.sample(pool, extra);
    cons.push_back({x, y, cost()});
  }
  draw.shuffle(&cons);
  return Instance(n, std::move(cons));
}

}  // namespace polybound
