#ifndef POLYBOUND_INSTANCE_H_
#define POLYBOUND_INSTANCE_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polybound/attr_set.h"
#include "polybound/rational.h"

namespace polybound {

// h(y) - h(x) <= cost, with x a proper subset of y.
struct DifferenceConstraint {
  AttrSet x;
  AttrSet y;
  Rational cost;

  friend bool operator==(const DifferenceConstraint&,
                         const DifferenceConstraint&) = default;
};

// Universe {1..n} plus an ordered list of difference constraints.
// Constraint indices are 0-based in the API and 1-based in text output.
class Instance {
 public:
  Instance() = default;
  // Throws InvalidInstance when a constraint is malformed.
  Instance(int n, std::vector<DifferenceConstraint> constraints);

  int n() const { return n_; }
  int k() const { return static_cast<int>(constraints_.size()); }
  AttrSet universe() const { return AttrSet::full(n_); }
  const std::vector<DifferenceConstraint>& constraints() const {
    return constraints_;
  }
  const DifferenceConstraint& operator[](int i) const {
    return constraints_[i];
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int n_ = 0;
  std::vector<DifferenceConstraint> constraints_;
};

// Checks a single constraint against a universe size. Returns an empty string
// when valid, otherwise a human-readable reason.
std::string validate_constraint(int n, const DifferenceConstraint& dc);

// Parses "{}" / "{1,3}". Throws ParseError with column relative to text.
AttrSet parse_attr_set(std::string_view text);

Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

// Canonical text form; parse_instance(render_instance(x)) == x.
std::string render_instance(const Instance& inst);

}  // namespace polybound

#endif  // POLYBOUND_INSTANCE_H_
