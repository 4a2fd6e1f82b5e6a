#include "polybound/witness_io.h"

#include <fstream>
#include <sstream>

#include "polybound/errors.h"
#include "text_scan.h"

namespace polybound {

std::string render_delta(const std::vector<Rational>& delta) {
  std::ostringstream os;
  for (size_t i = 0; i < delta.size(); ++i) {
    os << "delta " << i + 1 << " = " << delta[i] << '\n';
  }
  return os.str();
}

std::string render_dual_witness(const DualWitness& w) {
  std::ostringstream os;
  os << render_delta(w.delta);
  for (const auto& [key, v] : w.sigma) {
    if (v.is_zero()) continue;
    os << "sigma " << key.first.to_string() << '|' << key.second.to_string()
       << " = " << v << '\n';
  }
  for (const auto& [key, v] : w.mu) {
    if (v.is_zero()) continue;
    os << "mu " << key.second.to_string() << "->" << key.first.to_string()
       << " = " << v << '\n';
  }
  return os.str();
}

std::string render_polymatroid(int n, const std::vector<Rational>& h) {
  std::ostringstream os;
  const uint64_t size = uint64_t{1} << n;
  for (uint64_t m = 0; m < size && m < h.size(); ++m) {
    os << "h " << AttrSet::from_mask(m).to_string() << " = " << h[m] << '\n';
  }
  return os.str();
}

std::string render_coverage(const std::map<AttrSet, Rational>& lambda) {
  std::ostringstream os;
  for (const auto& [v, w] : lambda) {
    os << "lambda " << v.to_string() << " = " << w << '\n';
  }
  return os.str();
}

std::string render_modular(const std::vector<Rational>& z) {
  std::ostringstream os;
  for (size_t a = 0; a < z.size(); ++a) {
    os << "z " << a + 1 << " = " << z[a] << '\n';
  }
  return os.str();
}

std::string render_semimodular(const SemimodularWitness& w) {
  std::ostringstream os;
  for (size_t j = 0; j < w.components.size(); ++j) {
    os << "component " << j + 1 << ' ' << w.components[j].to_string() << '\n';
  }
  for (size_t j = 0; j < w.components.size(); ++j) {
    for (uint64_t m = 0; m < w.tables[j].size(); ++m) {
      os << "hc " << j + 1 << ' '
         << from_local_mask(w.components[j], m).to_string() << " = "
         << w.tables[j][m] << '\n';
    }
  }
  return os.str();
}

namespace {

template <typename Map, typename Key>
void put(Map* m, const Key& key, const Rational& v,
         const detail::LineScanner& scan, int col) {
  if (!m->emplace(key, v).second) {
    throw ParseError(scan.line(), col, "duplicate entry");
  }
}

int index_in(detail::LineScanner& scan, int hi, const char* what) {
  scan.skip_space();
  int col = scan.column();
  long long v = scan.integer();
  if (v < 1 || v > hi) {
    throw ParseError(scan.line(), col,
                     std::string(what) + " " + std::to_string(v) +
                         " out of range 1.." + std::to_string(hi));
  }
  return static_cast<int>(v);
}

Rational value_after_equals(detail::LineScanner& scan) {
  scan.expect("=");
  return scan.rational();
}

}  // namespace

WitnessFile parse_witness(std::istream& in, int n) {
  WitnessFile f;
  detail::for_each_significant_line(in, [&](detail::LineScanner& scan) {
    scan.skip_space();
    const int col = scan.column();
    std::string_view kw = scan.keyword();
    if (kw == "delta") {
      int i = index_in(scan, 1 << 30, "constraint");
      put(&f.delta, i, value_after_equals(scan), scan, col);
    } else if (kw == "sigma") {
      AttrSet a = scan.attr_set(n);
      scan.expect("|");
      AttrSet b = scan.attr_set(n);
      if (b < a) std::swap(a, b);
      put(&f.sigma, SetPair{a, b}, value_after_equals(scan), scan, col);
    } else if (kw == "mu") {
      AttrSet y = scan.attr_set(n);
      scan.expect("->");
      AttrSet x = scan.attr_set(n);
      put(&f.mu, SetPair{x, y}, value_after_equals(scan), scan, col);
    } else if (kw == "h") {
      AttrSet s = scan.attr_set(n);
      put(&f.h, s, value_after_equals(scan), scan, col);
    } else if (kw == "lambda") {
      AttrSet s = scan.attr_set(n);
      put(&f.lambda, s, value_after_equals(scan), scan, col);
    } else if (kw == "z") {
      int a = index_in(scan, n, "attribute");
      put(&f.z, a, value_after_equals(scan), scan, col);
    } else if (kw == "component") {
      int j = index_in(scan, kMaxAttributes, "component");
      AttrSet s = scan.attr_set(n);
      if (!f.components.emplace(j, s).second) {
        throw ParseError(scan.line(), col, "duplicate component");
      }
    } else if (kw == "hc") {
      int j = index_in(scan, kMaxAttributes, "component");
      AttrSet s = scan.attr_set(n);
      put(&f.hc, std::make_pair(j, s), value_after_equals(scan), scan, col);
    } else {
      throw ParseError(scan.line(), col,
                       "unknown witness entry '" + std::string(kw) + "'");
    }
    scan.expect_end();
  });
  return f;
}

WitnessFile parse_witness(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  return parse_witness(in, n);
}

WitnessFile read_witness_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_witness(in, n);
}

std::vector<Rational> delta_vector(const WitnessFile& f, int k) {
  std::vector<Rational> delta(k);
  for (const auto& [i, v] : f.delta) {
    if (i > k) {
      throw PreconditionError("delta " + std::to_string(i) +
                              " names a constraint beyond " + std::to_string(k));
    }
    delta[i - 1] = v;
  }
  return delta;
}

DualWitness to_dual_witness(const WitnessFile& f, int k) {
  DualWitness w;
  w.delta = delta_vector(f, k);
  w.sigma = f.sigma;
  w.mu = f.mu;
  return w;
}

std::vector<Rational> polymatroid_table(const WitnessFile& f, int n) {
  std::vector<Rational> h(uint64_t{1} << n);
  for (const auto& [s, v] : f.h) h[s.mask()] = v;
  return h;
}

std::vector<Rational> modular_vector(const WitnessFile& f, int n) {
  std::vector<Rational> z(n);
  for (const auto& [a, v] : f.z) z[a - 1] = v;
  return z;
}

SemimodularWitness semimodular_witness(const WitnessFile& f) {
  SemimodularWitness w;
  int expect = 1;
  for (const auto& [j, v] : f.components) {
    if (j != expect++) {
      throw PreconditionError("components must be numbered 1, 2, ...");
    }
    w.components.push_back(v);
    w.tables.emplace_back(uint64_t{1} << v.size());
  }
  for (const auto& [key, value] : f.hc) {
    const auto& [j, s] = key;
    if (j > static_cast<int>(w.components.size())) {
      throw PreconditionError("hc entry for unknown component " +
                              std::to_string(j));
    }
    const AttrSet v = w.components[j - 1];
    if (!s.subset_of(v)) {
      throw PreconditionError("hc entry " + s.to_string() +
                              " lies outside component " + v.to_string());
    }
    w.tables[j - 1][local_mask(v, s)] = value;
  }
  return w;
}

}  // namespace polybound
