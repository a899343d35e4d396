#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heisenleib/scalar.hpp"

namespace heisenleib {

/// Ordered list of declared indeterminate names. Declaration order fixes the
/// monomial order and the pivot preference of the constraint engine.
class VarList {
 public:
  explicit VarList(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using VarListPtr = std::shared_ptr<const VarList>;

VarListPtr make_varlist(std::vector<std::string> names);

/// Sparse exponent vector: (variable index, exponent > 0), sorted by index.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  std::uint32_t degree = 0;

  std::uint32_t exponent(std::uint32_t var) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& x, const Monomial& y);

/// Graded lexicographic order, variable 0 most significant.
bool grlex_less(const Monomial& x, const Monomial& y);

struct GrLexDescending {
  bool operator()(const Monomial& x, const Monomial& y) const { return grlex_less(y, x); }
};

/// Multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map ordered by descending grlex with no zero
/// coefficients, so two equal polynomials are structurally identical.
/// Constants may carry no variable list; any other operand's list is adopted.
class PolyQ {
 public:
  using TermMap = std::map<Monomial, Rational, GrLexDescending>;

  PolyQ() = default;
  PolyQ(int c) : PolyQ(Rational(c)) {}
  PolyQ(long c) : PolyQ(Rational(c)) {}
  PolyQ(const Rational& c);

  static PolyQ variable(const VarListPtr& vars, std::string_view name);
  static PolyQ variable(const VarListPtr& vars, std::size_t index);

  const VarListPtr& vars() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  std::set<std::uint32_t> used_variables() const;
  std::vector<std::string> used_names() const;

  /// Coefficient of the degree-one monomial `var`.
  Rational linear_coefficient(std::uint32_t var) const;

  PolyQ operator-() const;
  PolyQ& operator+=(const PolyQ& rhs);
  PolyQ& operator-=(const PolyQ& rhs);
  PolyQ& operator*=(const PolyQ& rhs);
  PolyQ& operator*=(const Rational& c);

  /// Partial substitution; unbound names stay symbolic.
  PolyQ substitute(const std::map<std::string, PolyQ>& bindings) const;
  /// Full evaluation; every used indeterminate must be bound.
  Scalar evaluate(const std::map<std::string, Scalar>& bindings) const;

  /// Human-readable canonical form, e.g. "a^2 - b^2" or "-1/2*r_1_2".
  std::string to_string() const;

  friend bool operator==(const PolyQ& x, const PolyQ& y) { return x.terms_ == y.terms_; }

 private:
  void adopt_vars(const PolyQ& other);
  void add_term(const Monomial& m, const Rational& c);

  VarListPtr vars_;
  TermMap terms_;
};

inline PolyQ operator+(PolyQ x, const PolyQ& y) { return x += y; }
inline PolyQ operator-(PolyQ x, const PolyQ& y) { return x -= y; }
inline PolyQ operator*(PolyQ x, const PolyQ& y) { return x *= y; }
inline PolyQ operator*(const Rational& c, PolyQ x) { return x *= c; }

std::ostream& operator<<(std::ostream& os, const PolyQ& p);

/// True iff a univariate rational polynomial of degree <= 2 has a real root.
/// Constant: only the zero polynomial. Degree 1: always. Degree 2: discriminant
/// >= 0. Higher degree throws UnsupportedDegreeError.
bool quadratic_real_root_exists(const PolyQ& p);

}  // namespace heisenleib
