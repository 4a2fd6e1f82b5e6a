#ifndef POLYBOUND_ATTR_SET_H_
#define POLYBOUND_ATTR_SET_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace polybound {

inline constexpr int kMaxAttributes = 64;

// Subset of {1..64}; attribute a occupies bit a-1. Ordering compares the bit
// masks, which is the canonical "by set value" order used everywhere.
class AttrSet {
 public:
  constexpr AttrSet() = default;

  static constexpr AttrSet from_mask(uint64_t mask) { return AttrSet(mask); }
  static constexpr AttrSet singleton(int a) {
    return AttrSet(uint64_t{1} << (a - 1));
  }
  // {1..i}; prefix(0) is the empty set.
  static constexpr AttrSet prefix(int i) {
    return AttrSet(i >= 64 ? ~uint64_t{0} : (uint64_t{1} << i) - 1);
  }
  static constexpr AttrSet full(int n) { return prefix(n); }
  static AttrSet of(std::initializer_list<int> members) {
    AttrSet s;
    for (int a : members) s = s.with(a);
    return s;
  }

  constexpr uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int a) const { return (mask_ >> (a - 1)) & 1; }
  constexpr int min_element() const {
    return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1;
  }
  constexpr int max_element() const {
    return mask_ == 0 ? 0 : 64 - std::countl_zero(mask_);
  }

  constexpr bool subset_of(AttrSet o) const {
    return (mask_ & ~o.mask_) == 0;
  }
  constexpr bool proper_subset_of(AttrSet o) const {
    return subset_of(o) && mask_ != o.mask_;
  }
  // Neither contains the other.
  constexpr bool incomparable(AttrSet o) const {
    return !subset_of(o) && !o.subset_of(*this);
  }
  constexpr bool intersects(AttrSet o) const { return (mask_ & o.mask_) != 0; }

  constexpr AttrSet with(int a) const {
    return AttrSet(mask_ | (uint64_t{1} << (a - 1)));
  }
  constexpr AttrSet without(int a) const {
    return AttrSet(mask_ & ~(uint64_t{1} << (a - 1)));
  }

  friend constexpr AttrSet operator|(AttrSet a, AttrSet b) {
    return AttrSet(a.mask_ | b.mask_);
  }
  friend constexpr AttrSet operator&(AttrSet a, AttrSet b) {
    return AttrSet(a.mask_ & b.mask_);
  }
  // Set difference.
  friend constexpr AttrSet operator-(AttrSet a, AttrSet b) {
    return AttrSet(a.mask_ & ~b.mask_);
  }
  AttrSet& operator|=(AttrSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  AttrSet& operator&=(AttrSet o) {
    mask_ &= o.mask_;
    return *this;
  }

  friend constexpr bool operator==(AttrSet, AttrSet) = default;
  friend constexpr auto operator<=>(AttrSet a, AttrSet b) {
    return a.mask_ <=> b.mask_;
  }

  class Iterator {
   public:
    explicit constexpr Iterator(uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_) + 1; }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr bool operator!=(const Iterator& o) const {
      return rest_ != o.rest_;
    }

   private:
    uint64_t rest_;
  };
  constexpr Iterator begin() const { return Iterator(mask_); }
  constexpr Iterator end() const { return Iterator(0); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int a : *this) out.push_back(a);
    return out;
  }

  // "{}" or "{1,3}".
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int a : *this) {
      if (!first) out += ',';
      out += std::to_string(a);
      first = false;
    }
    return out + "}";
  }

 private:
  explicit constexpr AttrSet(uint64_t mask) : mask_(mask) {}
  uint64_t mask_ = 0;
};

// Calls fn on every subset of s, in increasing mask order.
template <typename Fn>
void for_each_subset(AttrSet s, Fn&& fn) {
  uint64_t m = s.mask();
  uint64_t sub = 0;
  while (true) {
    fn(AttrSet::from_mask(sub));
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

}  // namespace polybound

template <>
struct std::hash<polybound::AttrSet> {
  std::size_t operator()(polybound::AttrSet s) const noexcept {
    return std::hash<uint64_t>()(s.mask() * 0x9E3779B97F4A7C15ull);
  }
};

#endif  // POLYBOUND_ATTR_SET_H_
