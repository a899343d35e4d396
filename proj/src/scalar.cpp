#include "heisenleib/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <ostream>

#include "heisenleib/errors.hpp"

namespace heisenleib {

std::string to_string(Field field) { return field == Field::Complex ? "C" : "R"; }

Field parse_field(std::string_view text) {
  if (text == "C") return Field::Complex;
  if (text == "R") return Field::Real;
  throw ParseError("expected field C or R, got '" + std::string(text) + "'");
}

bool is_valid_radicand(long d) {
  if (d == 0 || d == 1) return false;
  unsigned long m = d < 0 ? static_cast<unsigned long>(-(d + 1)) + 1 : static_cast<unsigned long>(d);
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

Scalar::Scalar(const Rational& value) : a_(value) { a_.canonicalize(); }

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::quadratic(const Rational& a, const Rational& b, long d) {
  if (!is_valid_radicand(d)) {
    throw DomainError("radicand " + std::to_string(d) + " is not squarefree or is 0/1");
  }
  Scalar s;
  s.a_ = a;
  s.b_ = b;
  s.a_.canonicalize();
  s.b_.canonicalize();
  s.d_ = d;
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
}

namespace {

long merge_radicand(long x, long y) {
  if (x == 0) return y;
  if (y == 0 || x == y) return x;
  throw IncompatibleFieldError("cannot combine sqrt(" + std::to_string(x) + ") and sqrt(" +
                               std::to_string(y) + ")");
}

}  // namespace

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.a_ = -s.a_;
  s.b_ = -s.b_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  d_ = merge_radicand(d_, rhs.d_);
  a_ += rhs.a_;
  b_ += rhs.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  d_ = merge_radicand(d_, rhs.d_);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  const long d = merge_radicand(d_, rhs.d_);
  Rational a = a_ * rhs.a_ + b_ * rhs.b_ * d;
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Rational Scalar::norm() const { return a_ * a_ - b_ * b_ * d_; }

Scalar Scalar::conjugate() const {
  Scalar s = *this;
  s.b_ = -s.b_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (d_ == 0) {
    Rational q = 1 / a_;
    return Scalar(q);
  }
  const Rational n = norm();
  Scalar s;
  s.a_ = a_ / n;
  s.b_ = -b_ / n;
  s.d_ = d_;
  s.normalize();
  return s;
}

int Scalar::real_sign() const {
  if (d_ == 0) return sgn(a_);
  if (d_ < 0) throw DomainError("sign of a non-real scalar " + to_string());
  // sign(a + b*sqrt(d)) with d > 0
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sa == sb || sa == 0) return sb;
  if (sb == 0) return sa;
  // opposite signs: compare a^2 with d*b^2
  const int cmp_val = cmp(a_ * a_, b_ * b_ * d_);
  return cmp_val > 0 ? sa : sb;
}

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string() const {
  std::string out = rational_to_string(a_);
  if (d_ != 0) {
    if (sgn(b_) > 0) out += "+";
    out += rational_to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
  }
  return out;
}

std::string Scalar::to_display() const {
  auto compact = [](const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : rational_to_string(q);
  };
  if (d_ == 0) return compact(a_);
  std::string out = sgn(a_) != 0 ? compact(a_) : "";
  const Rational mag = abs(b_);
  if (sgn(b_) < 0) {
    out += "-";
  } else if (!out.empty()) {
    out += "+";
  }
  if (mag != 1) out += compact(mag) + "*";
  return out + "sqrt(" + std::to_string(d_) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat(std::string_view word) {
    if (text.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
  }
  std::string digits() {
    const std::size_t start = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  }
  // [-]digits[/digits]
  Rational rational(bool allow_sign) {
    bool negative = false;
    if (allow_sign && eat('-')) negative = true;
    Integer num(digits());
    Integer den(1);
    if (eat('/')) {
      den = Integer(digits());
      if (den == 0) fail("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  // "*sqrt(d)" after a coefficient, "sqrt(d)" without one
  long radicand(bool star) {
    if (star && !eat('*')) fail("expected '*sqrt('");
    if (!eat("sqrt(")) fail("expected 'sqrt('");
    bool negative = eat('-');
    const std::string ds = digits();
    if (!eat(')')) fail("expected ')'");
    if (ds.size() > 15) fail("radicand too large");
    long d = std::strtol(ds.c_str(), nullptr, 10);
    return negative ? -d : d;
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Cursor cur{text};
  auto finish = [&](const Rational& a, const Rational& b, long d) {
    if (!cur.done()) cur.fail("trailing characters");
    if (!is_valid_radicand(d)) cur.fail("invalid radicand");
    return quadratic(a, b, d);
  };
  // leading bare radical: "sqrt(d)" or "-sqrt(d)"
  if (text.starts_with("sqrt(") || text.starts_with("-sqrt(")) {
    const Rational coeff = cur.eat('-') ? -1 : 1;
    const long d = cur.radicand(false);
    return finish(0, coeff, d);
  }
  const Rational first = cur.rational(true);
  if (cur.done()) return Scalar(first);
  if (cur.peek() == '*') {
    const long d = cur.radicand(true);
    return finish(0, first, d);
  }
  bool negative = false;
  if (cur.eat('-')) {
    negative = true;
  } else if (!cur.eat('+')) {
    cur.fail("expected '+' or '-'");
  }
  Rational coeff = 1;
  long d = 0;
  if (cur.peek() == 's') {
    d = cur.radicand(false);
  } else {
    coeff = cur.rational(false);
    d = cur.radicand(true);
  }
  if (negative) coeff = -coeff;
  return finish(first, coeff, d);
}

namespace {

bool integer_sqrt(const Integer& n, Integer& root) {
  if (sgn(n) < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

// n = k^2 * m with m squarefree; returns false when n is too large to factor.
bool squarefree_split(Integer n, Integer& k, long& m) {
  const int sign = sgn(n);
  if (sign == 0) return false;
  if (sign < 0) n = -n;
  if (!n.fits_slong_p() || n > Integer("1000000000000")) return false;
  unsigned long value = n.get_ui();
  unsigned long kk = 1;
  unsigned long mm = 1;
  for (unsigned long p = 2; p * p <= value; ++p) {
    unsigned count = 0;
    while (value % p == 0) {
      value /= p;
      ++count;
    }
    for (unsigned c = 0; c < count / 2; ++c) kk *= p;
    if (count % 2 == 1) mm *= p;
  }
  mm *= value;
  k = Integer(kk);
  m = static_cast<long>(mm) * sign;
  return true;
}

}  // namespace

bool rational_sqrt(const Rational& q, Rational& root) {
  Integer rn, rd;
  if (!integer_sqrt(q.get_num(), rn) || !integer_sqrt(q.get_den(), rd)) return false;
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

bool field_sqrt(const Scalar& x, Scalar& root) {
  if (x.is_zero()) {
    root = Scalar();
    return true;
  }
  if (x.is_rational()) {
    Rational r;
    if (rational_sqrt(x.rational_part(), r)) {
      root = Scalar(r);
      return true;
    }
    const Rational& q = x.rational_part();
    Integer k;
    long m = 0;
    if (!squarefree_split(q.get_num() * q.get_den(), k, m)) return false;
    root = Scalar::quadratic(0, Rational(k, q.get_den()), m);
    return true;
  }
  // (u + v sqrt(d))^2 = a + b sqrt(d): u^2 + d v^2 = a, 2uv = b.
  const Rational& a = x.rational_part();
  const Rational& b = x.radical_coeff();
  const long d = x.radicand();
  Rational s;
  if (!rational_sqrt(x.norm(), s)) return false;
  for (const Rational& candidate : {Rational((a + s) / 2), Rational((a - s) / 2)}) {
    Rational u;
    if (sgn(candidate) == 0 || !rational_sqrt(candidate, u)) continue;
    const Rational v = b / (2 * u);
    Scalar y = Scalar::quadratic(u, v, d);
    if (y * y == x) {
      root = y;
      return true;
    }
  }
  return false;
}

}  // namespace heisenleib
