#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include "orthosign/error.hpp"

namespace orthosign {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline double to_double(const Rational& q) { return q.get_d(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "n", "-n" or "n/d" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return parse_error("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view d, bool allow_sign) {
    if (d.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (d[0] == '-' || d[0] == '+')) i = 1;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw parse_error("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

/// Exact rational approximation of a finite binary64 value (every double is dyadic).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
  Rational q(x);
  q.canonicalize();
  return q;
}

/// Element a + b*sqrt(2) of the quadratic field Q(sqrt 2). Used only for the
/// few fixtures whose entries involve sqrt(2).
class QSqrt2 {
public:
  QSqrt2() = default;
  QSqrt2(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
    return {Rational(x.a_ + y.a_), Rational(x.b_ + y.b_)};
  }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) {
    return {Rational(x.a_ - y.a_), Rational(x.b_ - y.b_)};
  }
  friend QSqrt2 operator-(const QSqrt2& x) { return {Rational(-x.a_), Rational(-x.b_)}; }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {Rational(x.a_ * y.a_ + 2 * x.b_ * y.b_), Rational(x.a_ * y.b_ + x.b_ * y.a_)};
  }
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) { return x * y.inverse(); }

  QSqrt2& operator+=(const QSqrt2& y) { return *this = *this + y; }
  QSqrt2& operator-=(const QSqrt2& y) { return *this = *this - y; }
  QSqrt2& operator*=(const QSqrt2& y) { return *this = *this * y; }
  QSqrt2& operator/=(const QSqrt2& y) { return *this = *this / y; }

  QSqrt2 inverse() const {
    Rational norm = a_ * a_ - 2 * b_ * b_;
    if (norm == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
    return {Rational(a_ / norm), Rational(-b_ / norm)};
  }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 2 b^2
    int c = cmp(Rational(a_ * a_), Rational(2 * b_ * b_));
    return c > 0 ? sa : sb;
  }

private:
  Rational a_{0};
  Rational b_{0};
};

inline int sign_of(const QSqrt2& x) { return x.sign(); }
inline bool is_zero(const QSqrt2& x) { return x.sign() == 0; }
inline double to_double(const QSqrt2& x) {
  return x.rational_part().get_d() + x.surd_part().get_d() * std::sqrt(2.0);
}
inline std::string to_string(const QSqrt2& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.surd_part();
  if (b == 0) return a.get_str();
  std::string surd = b.get_str() + "*sqrt2";
  if (a == 0) return surd;
  return a.get_str() + (sgn(b) > 0 ? "+" : "") + surd;
}

/// Parses "a", "b*sqrt2" or "a+b*sqrt2" / "a-b*sqrt2" with rational a, b.
inline QSqrt2 parse_qsqrt2(std::string_view text) {
  constexpr std::string_view tag = "*sqrt2";
  std::string s(text);
  std::size_t pos = s.find(tag);
  if (pos == std::string::npos) return QSqrt2(parse_rational(s));
  if (pos + tag.size() != s.size()) throw parse_error("malformed surd '" + s + "'");
  std::string head = s.substr(0, pos);
  // split at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;)
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  if (split == std::string::npos) return {Rational(0), parse_rational(head)};
  return {parse_rational(head.substr(0, split)), parse_rational(head.substr(split))};
}

}  // namespace orthosign
