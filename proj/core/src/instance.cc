#include "polybound/instance.h"

#include <fstream>
#include <sstream>

#include "polybound/errors.h"
#include "text_scan.h"

namespace polybound {

std::string validate_constraint(int n, const DifferenceConstraint& dc) {
  AttrSet u = AttrSet::full(n);
  if (!dc.y.subset_of(u)) {
    return "attribute " + std::to_string((dc.y - u).min_element()) +
           " out of range 1.." + std::to_string(n);
  }
  if (!dc.x.proper_subset_of(dc.y)) {
    return "X must be a proper subset of Y";
  }
  if (dc.cost.sign() < 0) return "cost must be nonnegative";
  return {};
}

Instance::Instance(int n, std::vector<DifferenceConstraint> constraints)
    : n_(n), constraints_(std::move(constraints)) {
  if (n < 1 || n > kMaxAttributes) {
    throw InvalidInstance("universe size must be in 1.." +
                          std::to_string(kMaxAttributes) + ", got " +
                          std::to_string(n));
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    std::string why = validate_constraint(n_, constraints_[i]);
    if (!why.empty()) {
      throw InvalidInstance("constraint " + std::to_string(i + 1) + ": " + why);
    }
  }
}

AttrSet parse_attr_set(std::string_view text) {
  detail::LineScanner scan(text, 0);
  AttrSet s = scan.attr_set(0);
  scan.expect_end();
  return s;
}

Instance parse_instance(std::istream& in) {
  int n = 0;
  std::vector<DifferenceConstraint> constraints;
  detail::for_each_significant_line(in, [&](detail::LineScanner& scan) {
    scan.skip_space();
    int col = scan.column();
    std::string_view kw = scan.keyword();
    if (n == 0) {
      if (kw != "universe") {
        throw ParseError(scan.line(), col, "expected 'universe <n>'");
      }
      scan.skip_space();
      int ncol = scan.column();
      long long v = scan.integer();
      if (v < 1) throw ParseError(scan.line(), ncol, "universe must be positive");
      if (v > kMaxAttributes) {
        throw ParseError(scan.line(), ncol,
                         "universe size " + std::to_string(v) +
                             " exceeds the maximum of " +
                             std::to_string(kMaxAttributes));
      }
      n = static_cast<int>(v);
      scan.expect_end();
      return;
    }
    if (kw != "dc") {
      throw ParseError(scan.line(), col, "expected 'dc'");
    }
    DifferenceConstraint dc;
    scan.skip_space();
    int xcol = scan.column();
    dc.x = scan.attr_set(n);
    scan.expect("->");
    dc.y = scan.attr_set(n);
    scan.expect(":");
    scan.skip_space();
    int ccol = scan.column();
    dc.cost = scan.rational();
    scan.expect_end();
    if (!dc.x.proper_subset_of(dc.y)) {
      throw ParseError(scan.line(), xcol, "X must be a proper subset of Y");
    }
    if (dc.cost.sign() < 0) {
      throw ParseError(scan.line(), ccol, "cost must be nonnegative");
    }
    constraints.push_back(std::move(dc));
  });
  if (n == 0) throw ParseError(0, 0, "missing 'universe <n>' line");
  return Instance(n, std::move(constraints));
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_instance(in);
}

std::string render_instance(const Instance& inst) {
  std::string out = "universe " + std::to_string(inst.n()) + "\n";
  for (const DifferenceConstraint& dc : inst.constraints()) {
    out += "dc " + dc.x.to_string() + " -> " + dc.y.to_string() + " : " +
           dc.cost.to_string() + "\n";
  }
  return out;
}

}  // namespace polybound
