#include "heisenleib/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "heisenleib/errors.hpp"

namespace heisenleib {

VarList::VarList(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw DomainError("duplicate indeterminate '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> VarList::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarListPtr make_varlist(std::vector<std::string> names) {
  return std::make_shared<const VarList>(std::move(names));
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  for (const auto& [v, e] : factors) {
    if (v == var) return e;
    if (v > var) break;
  }
  return 0;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.factors.reserve(x.factors.size() + y.factors.size());
  std::size_t i = 0, j = 0;
  while (i < x.factors.size() || j < y.factors.size()) {
    if (j == y.factors.size() || (i < x.factors.size() && x.factors[i].first < y.factors[j].first)) {
      out.factors.push_back(x.factors[i++]);
    } else if (i == x.factors.size() || y.factors[j].first < x.factors[i].first) {
      out.factors.push_back(y.factors[j++]);
    } else {
      out.factors.emplace_back(x.factors[i].first, x.factors[i].second + y.factors[j].second);
      ++i;
      ++j;
    }
  }
  out.degree = x.degree + y.degree;
  return out;
}

bool grlex_less(const Monomial& x, const Monomial& y) {
  if (x.degree != y.degree) return x.degree < y.degree;
  const std::size_t n = std::min(x.factors.size(), y.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto [vx, ex] = x.factors[i];
    const auto [vy, ey] = y.factors[i];
    // the operand holding the smaller variable index has a positive exponent
    // where the other has zero, so it is the larger one
    if (vx != vy) return vx > vy;
    if (ex != ey) return ex < ey;
  }
  return x.factors.size() < y.factors.size();
}

PolyQ::PolyQ(const Rational& c) {
  Rational q = c;
  q.canonicalize();
  if (sgn(q) != 0) terms_.emplace(Monomial{}, q);
}

PolyQ PolyQ::variable(const VarListPtr& vars, std::string_view name) {
  if (!vars) throw UnknownIndeterminateError("no indeterminates declared");
  auto index = vars->find(name);
  if (!index) throw UnknownIndeterminateError("undeclared indeterminate '" + std::string(name) + "'");
  return variable(vars, *index);
}

PolyQ PolyQ::variable(const VarListPtr& vars, std::size_t index) {
  if (!vars || index >= vars->size()) throw UnknownIndeterminateError("indeterminate index out of range");
  PolyQ p;
  p.vars_ = vars;
  Monomial m;
  m.factors.emplace_back(static_cast<std::uint32_t>(index), 1);
  m.degree = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

bool PolyQ::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree == 0);
}

Rational PolyQ::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int PolyQ::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree);
}

std::set<std::uint32_t> PolyQ::used_variables() const {
  std::set<std::uint32_t> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors) out.insert(v);
  }
  return out;
}

std::vector<std::string> PolyQ::used_names() const {
  std::vector<std::string> out;
  for (auto v : used_variables()) out.push_back(vars_->name(v));
  return out;
}

Rational PolyQ::linear_coefficient(std::uint32_t var) const {
  Monomial m;
  m.factors.emplace_back(var, 1);
  m.degree = 1;
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PolyQ::adopt_vars(const PolyQ& other) {
  if (!other.vars_ || other.vars_ == vars_) return;
  if (!vars_) {
    vars_ = other.vars_;
    return;
  }
  if (vars_->names() != other.vars_->names()) {
    throw DomainError("polynomials over different indeterminate lists");
  }
}

void PolyQ::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

PolyQ PolyQ::operator-() const {
  PolyQ p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

PolyQ& PolyQ::operator+=(const PolyQ& rhs) {
  adopt_vars(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& rhs) {
  adopt_vars(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

PolyQ& PolyQ::operator*=(const PolyQ& rhs) {
  adopt_vars(rhs);
  PolyQ acc;
  acc.vars_ = vars_;
  for (const auto& [mx, cx] : terms_) {
    for (const auto& [my, cy] : rhs.terms_) acc.add_term(mx * my, cx * cy);
  }
  terms_ = std::move(acc.terms_);
  return *this;
}

PolyQ& PolyQ::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

PolyQ PolyQ::substitute(const std::map<std::string, PolyQ>& bindings) const {
  // resolve names against the declared list up front
  std::map<std::uint32_t, const PolyQ*> by_index;
  for (const auto& [name, value] : bindings) {
    if (!vars_) continue;
    auto index = vars_->find(name);
    if (!index) throw UnknownIndeterminateError("undeclared indeterminate '" + name + "'");
    by_index.emplace(static_cast<std::uint32_t>(*index), &value);
  }
  PolyQ out;
  out.vars_ = vars_;
  for (const auto& [m, c] : terms_) {
    PolyQ term(c);
    term.vars_ = vars_;
    Monomial kept;
    for (const auto& [v, e] : m.factors) {
      auto it = by_index.find(v);
      if (it == by_index.end()) {
        kept.factors.emplace_back(v, e);
        kept.degree += e;
        continue;
      }
      for (std::uint32_t k = 0; k < e; ++k) term *= *it->second;
    }
    if (!kept.factors.empty()) {
      PolyQ mono;
      mono.vars_ = vars_;
      mono.terms_.emplace(std::move(kept), Rational(1));
      term *= mono;
    }
    out += term;
  }
  return out;
}

Scalar PolyQ::evaluate(const std::map<std::string, Scalar>& bindings) const {
  std::map<std::uint32_t, const Scalar*> by_index;
  for (const auto& [name, value] : bindings) {
    if (!vars_) continue;
    auto index = vars_->find(name);
    if (!index) throw UnknownIndeterminateError("undeclared indeterminate '" + name + "'");
    by_index.emplace(static_cast<std::uint32_t>(*index), &value);
  }
  Scalar total;
  for (const auto& [m, c] : terms_) {
    Scalar term(c);
    for (const auto& [v, e] : m.factors) {
      auto it = by_index.find(v);
      if (it == by_index.end()) {
        throw UnknownIndeterminateError("indeterminate '" + vars_->name(v) + "' left unbound in evaluation");
      }
      for (std::uint32_t k = 0; k < e; ++k) term *= *it->second;
    }
    total += term;
  }
  return total;
}

std::string PolyQ::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = magnitude == 1;
    if (m.factors.empty()) {
      os << magnitude.get_str();
      continue;
    }
    if (!unit) os << magnitude.get_str() << "*";
    bool first_factor = true;
    for (const auto& [v, e] : m.factors) {
      if (!first_factor) os << "*";
      first_factor = false;
      os << (vars_ ? vars_->name(v) : "x" + std::to_string(v));
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.to_string(); }

bool quadratic_real_root_exists(const PolyQ& p) {
  const auto used = p.used_variables();
  if (used.size() > 1) throw DomainError("expected a univariate polynomial, got " + p.to_string());
  const int deg = p.degree();
  if (deg > 2) throw UnsupportedDegreeError("real-root decision limited to degree <= 2, got " + p.to_string());
  if (deg <= 0) return p.is_zero();
  if (deg == 1) return true;
  const std::uint32_t var = *used.begin();
  Monomial sq;
  sq.factors.emplace_back(var, 2);
  sq.degree = 2;
  const Rational a = p.terms().at(sq);
  const Rational b = p.linear_coefficient(var);
  const Rational c = p.constant_term();
  return sgn(b * b - 4 * a * c) >= 0;
}

}  // namespace heisenleib
