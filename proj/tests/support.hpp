#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "heisenleib/heisenberg.hpp"
#include "heisenleib/nilpotency.hpp"

namespace testing {

using namespace heisenleib;

inline ScalarMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> data;
  for (const auto& r : rows) data.emplace_back(r);
  return to_scalar_matrix(data);
}

inline Vec<Scalar> vec(std::initializer_list<long> xs) {
  Vec<Scalar> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Vec<Scalar> unit(std::size_t dim, std::size_t i) { return basis_vector<Scalar>(dim, i); }

/// n = 1, f = 1 spec with a, X and rho, r given.
inline ExtensionSpec spec1(long a, const ScalarMatrix& x, Vec<Scalar> rho = {0, 0}, long r = 0) {
  ExtensionSpec s = ExtensionSpec::zeros(1, 1);
  s.a = {Scalar(a)};
  s.X = {x};
  s.rho = {std::move(rho)};
  s.r(0, 0) = Scalar(r);
  return s;
}

/// Small deterministic generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long span = 5, long den = 4) {
    return Rational(integer(-span, span), integer(1, den));
  }

  Scalar scalar(long d) {
    if (d == 0) return Scalar(rational());
    return Scalar::quadratic(rational(), rational(), d);
  }

  Vec<Scalar> vector(std::size_t n, long span = 3) {
    Vec<Scalar> v(n);
    for (auto& x : v) x = Scalar(integer(-span, span));
    return v;
  }

  ScalarMatrix matrix(std::size_t r, std::size_t c, long span = 2) {
    ScalarMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(integer(-span, span));
    }
    return m;
  }

  /// Unit upper triangular times unit lower triangular: always invertible.
  ScalarMatrix invertible(std::size_t n) {
    ScalarMatrix u = ScalarMatrix::identity(n), l = ScalarMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        u(i, j) = Scalar(rational(2, 2));
        l(j, i) = Scalar(rational(2, 2));
      }
    }
    ScalarMatrix d = ScalarMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Scalar(integer(1, 3) * (integer(0, 1) ? 1 : -1));
    return u * d * l;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Random spec passing validation: n = 1 with a in {0, 1}, or n = 2 with a
/// degenerate diagonal X so that rho and r can be nonzero.
inline ExtensionSpec random_spec(Gen& g) {
  if (g.integer(0, 2) == 0) {
    ExtensionSpec s = ExtensionSpec::zeros(2, 1);
    long p = 0;
    while (p == 0) p = g.integer(-3, 3);
    s.X = {ScalarMatrix(4, 4)};
    s.X[0](0, 0) = Scalar(p);
    s.X[0](2, 2) = Scalar(-p);
    s.rho = {Vec<Scalar>{0, Scalar(g.integer(-2, 2)), 0, Scalar(g.integer(-2, 2))}};
    s.r(0, 0) = Scalar(g.integer(-2, 2));
    return s;
  }
  ExtensionSpec s = ExtensionSpec::zeros(1, 1);
  const bool a1 = g.integer(0, 1) == 1;
  s.a = {Scalar(a1 ? 1 : 0)};
  ScalarMatrix x(2, 2);
  do {
    x = g.matrix(2, 2, 3);
    x(1, 1) = -x(0, 0);
  } while (!a1 && matrix_nilpotent(x));
  s.X = {x};
  if (!a1) s.r(0, 0) = Scalar(g.integer(-2, 2));
  return s;
}

/// A random valid extension seen in a random basis.
inline StructTensor random_algebra(Gen& g) {
  const StructTensor t = build_extension(random_spec(g));
  return g.integer(0, 1) ? change_basis(t, g.invertible(t.dim())) : t;
}

/// M nilpotent iff tr(M^k) = 0 for k = 1..n (characteristic zero).
inline bool trace_oracle(const ScalarMatrix& m) {
  ScalarMatrix p = m;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    Scalar tr;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += p(i, i);
    if (!tr.is_zero()) return false;
    p = p * m;
  }
  return true;
}

inline ScalarMatrix random_square(Gen& g, std::size_t n) {
  const int kind = static_cast<int>(g.integer(0, 2));
  if (kind == 0) return g.matrix(n, n, 2);
  // conjugate of a strictly upper triangular matrix, possibly shifted off nilpotency
  ScalarMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = Scalar(g.integer(-2, 2));
  }
  if (kind == 2) u(n - 1, n - 1) = Scalar(g.integer(1, 2));
  const ScalarMatrix p = g.invertible(n);
  return p * u * inverse(p);
}

}  // namespace testing
