#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace heisenleib {

using Integer = mpz_class;
using Rational = mpq_class;

/// Ground field a catalog entry or nilindependence question is posed over.
enum class Field { Complex, Real };

std::string to_string(Field field);
Field parse_field(std::string_view text);

/// Squarefree, and not 0 or 1.
bool is_valid_radicand(long d);

/// Exact element of Q or of a quadratic extension Q(sqrt(d)).
///
/// A value is stored as a + b*sqrt(d). When b is zero the radicand is dropped
/// (d == 0), so Rational(x) and Quadratic(x, 0, d) are the same value. Two
/// operands carrying radicals must agree on d; mixing them throws
/// IncompatibleFieldError.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int value) : a_(value) {}
  Scalar(long value) : a_(value) {}
  Scalar(const Rational& value);

  static Scalar fraction(long num, long den);
  static Scalar quadratic(const Rational& a, const Rational& b, long d);
  /// The imaginary unit sqrt(-1).
  static Scalar i() { return quadratic(0, 1, -1); }

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& radical_coeff() const noexcept { return b_; }
  /// 0 for a plain rational.
  long radicand() const noexcept { return d_; }

  bool is_rational() const noexcept { return d_ == 0; }
  bool is_zero() const noexcept { return sgn(a_) == 0 && d_ == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  /// Throws DomainError on zero.
  Scalar inverse() const;
  /// a - b*sqrt(d).
  Scalar conjugate() const;
  /// a^2 - d*b^2; nonzero for every nonzero value.
  Rational norm() const;

  /// Sign of a real value. Defined for rationals and for d > 0.
  int real_sign() const;

  /// Canonical text: "p/q" or "p/q+r/s*sqrt(d)" (sign inline, no spaces).
  std::string to_string() const;
  /// Short form for reports: "3", "-1/2", "1+2*sqrt(-1)", "sqrt(2)".
  std::string to_display() const;
  static Scalar parse(std::string_view text);

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

 private:
  void normalize();

  Rational a_;
  Rational b_;
  long d_ = 0;
};

inline Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
inline Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
inline Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
inline Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Canonical "p/q" text of a rational.
std::string rational_to_string(const Rational& q);

/// Exact square root of a rational when it is a perfect square in Q.
bool rational_sqrt(const Rational& q, Rational& root);

/// Square root of `x` inside the field x already lives in (Q or Q(sqrt(d))),
/// or, for a rational x, inside Q(sqrt(squarefree part of x)).
/// Returns false when no such root exists in a single quadratic field.
bool field_sqrt(const Scalar& x, Scalar& root);

}  // namespace heisenleib
