#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisenleib/algebra.hpp"

namespace heisenleib {

/// M^dim == 0, computed exactly.
bool matrix_nilpotent(const ScalarMatrix& m);

/// Nonzero (c1, c2) with alpha*c1^2 + beta*c1*c2 + gamma*c2^2 = 0, one per root
/// line. Real lines only for Field::Real. Coefficients must be rational. The
/// roots live in Q or in Q(sqrt(discriminant)); lines whose square root cannot
/// be formed are omitted and flagged through `complete`.
struct BinaryQuadraticRoots {
  bool every_direction = false;  ///< the form is identically zero
  std::vector<std::pair<Scalar, Scalar>> lines;
  bool complete = true;
};
BinaryQuadraticRoots binary_quadratic_roots(const Rational& alpha, const Rational& beta, const Rational& gamma,
                                            Field field);

struct Sp2Locus {
  bool nilindependent_over_C = false;
  bool nilindependent_over_R = false;
  /// A verified nilpotent combination, real whenever one exists.
  std::optional<std::pair<Scalar, Scalar>> witness;
  /// Coefficients of det(c1*X1 + c2*X2) = alpha*c1^2 + beta*c1*c2 + gamma*c2^2.
  Rational alpha, beta, gamma;
};

/// Both inputs must be rational members of sp(2); otherwise DomainError.
Sp2Locus sp2_nilpotency_locus(const ScalarMatrix& x1, const ScalarMatrix& x2);

struct Proportionality {
  bool commute = false;
  bool proportional = false;
};
/// Throws DomainError on a zero input.
Proportionality commuting_sp2_proportionality(const ScalarMatrix& x1, const ScalarMatrix& x2);

enum class Decision { Yes, No, Undecided };
std::string to_string(Decision d);

struct NilindependenceResult {
  Decision nilindependent = Decision::Undecided;
  std::optional<std::vector<Scalar>> witness;  ///< coefficients of a nilpotent combination
  std::string method;
};

/// Linear nilindependence of a set of square matrices. Decided for a single
/// matrix and for pairs of 2x2 symplectic matrices; undecided otherwise.
NilindependenceResult nilindependence(const std::vector<ScalarMatrix>& xs, Field field);

/// Lower central series of W (W, [W,W], [W,[W,W]], ...) reaches zero.
/// Throws NotSubalgebraError when W is not closed under the bracket.
bool subspace_nilpotent(const StructTensor& t, const Subspace& w);

enum class Maximality { Proved, Refuted, Undecided };
std::string to_string(Maximality m);

struct NilradicalCertificate {
  std::string algebra_id;
  Subspace nilradical;
  bool ideal = false;
  bool nilpotent = false;
  bool contains_derived = false;
  Maximality maximality = Maximality::Undecided;
  std::optional<Vec<Scalar>> witness;
  std::string method;

  bool proved() const { return ideal && nilpotent && contains_derived && maximality == Maximality::Proved; }
};

/// Certifies that N is the nilradical of T.
///
/// Since [L,L] lies in N, every subspace containing N is an ideal, and N + span(x)
/// is nilpotent only if x is a nilpotent element. Maximality therefore reduces to
/// showing that no nonzero combination of a complement of N is a nilpotent
/// element. The search is complete for a one-dimensional complement, and for a
/// two-dimensional complement when [N,N] has dimension 1 and N/[N,N] dimension 2.
NilradicalCertificate certify_nilradical(const StructTensor& t, const Subspace& n, Field field,
                                         std::string algebra_id = {});

/// dim N >= dim L / 2.
bool mubar_bound_check(std::size_t nilradical_dim, std::size_t algebra_dim);
bool mubar_bound_check(const StructTensor& t, const Subspace& n);

}  // namespace heisenleib
