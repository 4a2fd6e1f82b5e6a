#ifndef POLYBOUND_RATIONAL_H_
#define POLYBOUND_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace polybound {

// Exact rational number, always reduced with a positive denominator.
//
// Values whose numerator and denominator fit in int64 are stored inline and
// use 128-bit intermediates; everything else falls back to a shared,
// immutable GMP rational. Either representation is canonical: a value that
// fits inline is never stored as a big rational.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  template <std::integral T>
  Rational(T v) : num_(0), den_(1) {  // NOLINT(runtime/explicit)
    if constexpr (std::is_signed_v<T>) {
      set_integer(static_cast<long long>(v));
    } else {
      set_unsigned(static_cast<unsigned long long>(v));
    }
  }
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept;
  ~Rational() { release(); }

  // Accepts "12", "-3/4" and decimal literals such as "5.644".
  static Rational parse(std::string_view text);
  static bool try_parse(std::string_view text, Rational* out);

  bool is_zero() const { return den_ != 0 && num_ == 0; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return den_ != 0; }

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  double to_double() const;
  // "p" or "p/q".
  std::string to_string() const;
  std::size_t hash() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  // this -= a * b, the inner update of elimination loops.
  void sub_mul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  static Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
  static Rational min(const Rational& a, const Rational& b) {
    return b < a ? b : a;
  }
  static Rational max(const Rational& a, const Rational& b) {
    return a < b ? b : a;
  }

 private:
  struct BigRep;

  void set_integer(long long v);
  void set_unsigned(unsigned long long v);

  static Rational from_i128(__int128 num, __int128 den);
  static Rational from_big(mpq_class&& q);
  const mpq_class& big() const;
  void release();

  union {
    int64_t num_;
    BigRep* rep_;
  };
  // Zero marks the big representation.
  int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

}  // namespace polybound

#endif  // POLYBOUND_RATIONAL_H_
