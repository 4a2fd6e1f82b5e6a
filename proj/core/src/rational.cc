#include "polybound/rational.h"

#include <atomic>
#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <utility>

#include "polybound/errors.h"

namespace polybound {

struct Rational::BigRep {
  explicit BigRep(mpq_class&& v) : refs(1), q(std::move(v)) {}
  std::atomic<int> refs;
  mpq_class q;
};

namespace {

constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

uint64_t uabs(int64_t v) {
  return v < 0 ? uint64_t(0) - static_cast<uint64_t>(v)
               : static_cast<uint64_t>(v);
}

unsigned __int128 uabs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(0) -
                     static_cast<unsigned __int128>(v)
               : static_cast<unsigned __int128>(v);
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
    }
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(__int128 v) {
  unsigned __int128 u = uabs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return v < 0 ? mpz_class(-r) : r;
}

bool mpz_fits_i64(const mpz_class& z) {
  // mpz_fits_slong_p is exact for the platform long, which is 64-bit here.
  static_assert(sizeof(long) == 8, "64-bit long expected");
  return mpz_fits_slong_p(z.get_mpz_t()) &&
         mpz_cmp_si(z.get_mpz_t(), std::numeric_limits<long>::min()) != 0;
}

}  // namespace

void Rational::set_integer(long long v) {
  if (v == std::numeric_limits<long long>::min()) {
    *this = from_big(mpq_class(mpz_from_i128(v)));
  } else {
    *this = from_i128(v, 1);
  }
}

void Rational::set_unsigned(unsigned long long v) {
  *this = from_i128(static_cast<__int128>(v), 1);
}

Rational::Rational(long long num, long long den) : num_(0), den_(1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(num, den);
}

Rational::Rational(const mpq_class& q) : num_(0), den_(1) {
  mpq_class c(q);
  c.canonicalize();
  *this = from_big(std::move(c));
}

Rational::Rational(const mpz_class& z) : num_(0), den_(1) {
  *this = from_big(mpq_class(z));
}

Rational::Rational(const Rational& o) : den_(o.den_) {
  if (den_ == 0) {
    rep_ = o.rep_;
    rep_->refs.fetch_add(1, std::memory_order_relaxed);
  } else {
    num_ = o.num_;
  }
}

Rational::Rational(Rational&& o) noexcept : den_(o.den_) {
  if (den_ == 0) {
    rep_ = o.rep_;
    o.den_ = 1;
    o.num_ = 0;
  } else {
    num_ = o.num_;
  }
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  if (o.den_ == 0) o.rep_->refs.fetch_add(1, std::memory_order_relaxed);
  release();
  den_ = o.den_;
  if (den_ == 0) {
    rep_ = o.rep_;
  } else {
    num_ = o.num_;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
  if (this == &o) return *this;
  release();
  den_ = o.den_;
  if (den_ == 0) {
    rep_ = o.rep_;
    o.den_ = 1;
    o.num_ = 0;
  } else {
    num_ = o.num_;
  }
  return *this;
}

void Rational::release() {
  if (den_ == 0) {
    if (rep_->refs.fetch_sub(1, std::memory_order_acq_rel) == 1) delete rep_;
    den_ = 1;
    num_ = 0;
  }
}

const mpq_class& Rational::big() const { return rep_->q; }

Rational Rational::from_i128(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  unsigned __int128 g = gcd128(uabs128(num), static_cast<unsigned __int128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  Rational r;
  if (fits(num) && den <= kMax) {
    r.num_ = static_cast<int64_t>(num);
    r.den_ = static_cast<int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  r.rep_ = new BigRep(std::move(q));
  r.den_ = 0;
  return r;
}

// Expects a canonical q.
Rational Rational::from_big(mpq_class&& q) {
  Rational r;
  if (mpz_fits_i64(q.get_num()) && mpz_fits_i64(q.get_den())) {
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
    return r;
  }
  r.rep_ = new BigRep(std::move(q));
  r.den_ = 0;
  return r;
}

bool Rational::is_integer() const {
  if (den_ != 0) return den_ == 1;
  return big().get_den() == 1;
}

int Rational::sign() const {
  if (den_ != 0) return (num_ > 0) - (num_ < 0);
  return sgn(big());
}

mpq_class Rational::to_mpq() const {
  if (den_ != 0) {
    return mpq_class(mpz_class(static_cast<long>(num_)),
                     mpz_class(static_cast<long>(den_)));
  }
  return big();
}

mpz_class Rational::numerator() const {
  if (den_ != 0) return mpz_class(static_cast<long>(num_));
  return big().get_num();
}

mpz_class Rational::denominator() const {
  if (den_ != 0) return mpz_class(static_cast<long>(den_));
  return big().get_den();
}

double Rational::to_double() const {
  if (den_ != 0) {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  return big().get_d();
}

std::string Rational::to_string() const {
  if (den_ != 0) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big().get_str();
}

std::size_t Rational::hash() const {
  if (den_ != 0) {
    uint64_t h = static_cast<uint64_t>(num_) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<uint64_t>(den_) + 0x632BE59BD9B4E019ull + (h << 6) +
         (h >> 2);
    return static_cast<std::size_t>(h);
  }
  uint64_t h = mpz_get_ui(big().get_num_mpz_t());
  h ^= mpz_get_ui(big().get_den_mpz_t()) * 0x9E3779B97F4A7C15ull;
  h ^= static_cast<uint64_t>(mpz_size(big().get_num_mpz_t())) << 56;
  return static_cast<std::size_t>(h);
}

Rational Rational::operator-() const {
  if (den_ != 0) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_big(mpq_class(-big()));
}

Rational& Rational::operator+=(const Rational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ != 0 && o.den_ != 0) {
    if (den_ == 1 && o.den_ == 1) {
      __int128 s = static_cast<__int128>(num_) + o.num_;
      if (fits(s)) {
        num_ = static_cast<int64_t>(s);
        return *this;
      }
      return *this = from_i128(s, 1);
    }
    uint64_t g = std::gcd(static_cast<uint64_t>(den_),
                          static_cast<uint64_t>(o.den_));
    int64_t b_g = den_ / static_cast<int64_t>(g);
    int64_t d_g = o.den_ / static_cast<int64_t>(g);
    __int128 t = static_cast<__int128>(num_) * d_g +
                 static_cast<__int128>(o.num_) * b_g;
    if (t == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    uint64_t g2 = g == 1 ? 1 : std::gcd(static_cast<uint64_t>(uabs128(t) % g), g);
    __int128 num = t / static_cast<__int128>(g2);
    __int128 den = static_cast<__int128>(b_g) *
                   (o.den_ / static_cast<int64_t>(g2));
    if (fits(num) && den <= kMax) {
      num_ = static_cast<int64_t>(num);
      den_ = static_cast<int64_t>(den);
      return *this;
    }
    return *this = from_i128(num, den);
  }
  return *this = from_big(to_mpq() + o.to_mpq());
}

Rational& Rational::operator-=(const Rational& o) {
  if (o.is_zero()) return *this;
  if (o.den_ != 0 && o.num_ != std::numeric_limits<int64_t>::min()) {
    Rational neg;
    neg.num_ = -o.num_;
    neg.den_ = o.den_;
    return *this += neg;
  }
  return *this = from_big(to_mpq() - o.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return Rational();
  if (a.den_ != 0 && b.den_ != 0) {
    uint64_t g1 = std::gcd(uabs(a.num_), static_cast<uint64_t>(b.den_));
    uint64_t g2 = std::gcd(uabs(b.num_), static_cast<uint64_t>(a.den_));
    __int128 num = static_cast<__int128>(a.num_ / static_cast<int64_t>(g1)) *
                   (b.num_ / static_cast<int64_t>(g2));
    __int128 den = static_cast<__int128>(a.den_ / static_cast<int64_t>(g2)) *
                   (b.den_ / static_cast<int64_t>(g1));
    if (fits(num) && den <= kMax) {
      Rational r;
      r.num_ = static_cast<int64_t>(num);
      r.den_ = static_cast<int64_t>(den);
      return r;
    }
    return Rational::from_i128(num, den);
  }
  return Rational::from_big(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (a.is_zero()) return Rational();
  if (a.den_ != 0 && b.den_ != 0) {
    uint64_t g1 = std::gcd(uabs(a.num_), uabs(b.num_));
    uint64_t g2 = std::gcd(static_cast<uint64_t>(a.den_),
                           static_cast<uint64_t>(b.den_));
    __int128 num = static_cast<__int128>(a.num_ / static_cast<int64_t>(g1)) *
                   (b.den_ / static_cast<int64_t>(g2));
    __int128 den = static_cast<__int128>(a.den_ / static_cast<int64_t>(g2)) *
                   (b.num_ / static_cast<int64_t>(g1));
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (fits(num) && den <= kMax) {
      Rational r;
      r.num_ = static_cast<int64_t>(num);
      r.den_ = static_cast<int64_t>(den);
      return r;
    }
    return Rational::from_i128(num, den);
  }
  return Rational::from_big(a.to_mpq() / b.to_mpq());
}

Rational& Rational::operator*=(const Rational& o) { return *this = *this * o; }

Rational& Rational::operator/=(const Rational& o) { return *this = *this / o; }

void Rational::sub_mul(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  *this -= a * b;
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.den_ != 0 && b.den_ != 0) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.den_ != 0 || b.den_ != 0) return false;
  return a.big() == b.big();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ != 0 && b.den_ != 0) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

bool Rational::try_parse(std::string_view text, Rational* out) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    return end;
  };
  std::size_t int_end = digits(pos);
  if (int_end == pos) return false;
  mpz_class num(std::string(text.substr(pos, int_end - pos)), 10);
  mpz_class den(1);
  if (int_end < text.size()) {
    char sep = text[int_end];
    std::size_t frac_end = digits(int_end + 1);
    if (frac_end == int_end + 1 || frac_end != text.size()) return false;
    std::string part(text.substr(int_end + 1, frac_end - int_end - 1));
    if (sep == '/') {
      den = mpz_class(part, 10);
      if (den == 0) return false;
    } else if (sep == '.') {
      mpz_ui_pow_ui(den.get_mpz_t(), 10, part.size());
      num = num * den + mpz_class(part, 10);
    } else {
      return false;
    }
  }
  if (negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  *out = from_big(std::move(q));
  return true;
}

Rational Rational::parse(std::string_view text) {
  Rational r;
  if (!try_parse(text, &r)) {
    throw ParseError(0, 0, "invalid rational literal '" + std::string(text) + "'");
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace polybound
