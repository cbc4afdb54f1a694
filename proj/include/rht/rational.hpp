#pragma once

// Exact rational scalar: a thin value-type wrapper around GMP's mpq_class.
// The wrapper keeps every value canonical (reduced, positive denominator) and
// exposes plain value-returning operators so it composes with Eigen matrices
// without gmpxx expression templates leaking through.

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "rht/errors.hpp"

namespace rht {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_{static_cast<long>(n)} {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw GradingError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) {}

  // Strict parse of "p" or "p/q": base-10 digits with optional leading '-',
  // and the string must already be in canonical reduced form ("2/4", "1/-2",
  // "007", and "3/1" are all rejected so serialization round-trips exactly).
  static Rational fromString(std::string_view s);

  const mpq_class& raw() const { return v_; }
  bool isZero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw GradingError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.isZero()) throw GradingError("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class v_;
};

inline Rational Rational::fromString(std::string_view s) {
  auto fail = [&](const std::string& why) -> Rational {
    throw ParseError("coefficient \"" + std::string(s) + "\"", why);
  };
  if (s.empty()) return fail("empty coefficient");
  std::string_view body = s;
  if (body.front() == '-') body.remove_prefix(1);
  if (body.empty()) return fail("no digits");
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view() : body.substr(slash + 1);
  auto digitsOk = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!digitsOk(num)) return fail("numerator is not a base-10 integer");
  if (slash != std::string_view::npos && !digitsOk(den))
    return fail("denominator is not a base-10 integer");
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0) return fail("unparsable rational");
  if (sgn(q.get_den()) == 0) return fail("zero denominator");
  mpq_class canon = q;
  canon.canonicalize();
  if (canon.get_str() != s) return fail("not in canonical reduced form");
  return Rational(std::move(canon));
}

}  // namespace rht

namespace Eigen {

// Exact scalar: epsilon and dummy_precision are genuinely zero, every
// comparison in the engine is exact equality.
template <>
struct NumTraits<rht::Rational> : GenericNumTraits<rht::Rational> {
  typedef rht::Rational Real;
  typedef rht::Rational NonInteger;
  typedef rht::Rational Nested;
  static inline Real epsilon() { return rht::Rational(0); }
  static inline Real dummy_precision() { return rht::Rational(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
