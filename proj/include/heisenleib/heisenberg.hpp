#pragma once

#include <string>
#include <vector>

#include "heisenleib/algebra.hpp"
#include "heisenleib/nilpotency.hpp"

namespace heisenleib {

/// Data of an extension of H(n) by S_1..S_f.
///
/// X[a] is 2n x 2n in the row convention: [S_a, Y_i] = sum_j (a_a I + X_a)_ij Y_j
/// with Y = (P_1..P_n, B_1..B_n). rho[a] has length 2n and r is f x f.
struct ExtensionSpec {
  int n = 1;
  int f = 1;
  std::vector<Scalar> a;
  std::vector<ScalarMatrix> X;
  std::vector<Vec<Scalar>> rho;
  ScalarMatrix r;

  /// Zero rho and r, a = 0, X = 0.
  static ExtensionSpec zeros(int n, int f);
};

/// (2n+1)-dim Heisenberg algebra, basis (H, P_1..P_n, B_1..B_n).
StructTensor heisenberg(int n);

/// K = [[0, I], [-I, 0]].
ScalarMatrix symplectic_form(int n);
/// X K + K X^T == 0. Throws ShapeError unless X is 2n x 2n.
bool symplectic_check(const ScalarMatrix& x, int n);
/// X rho == a rho.
bool eigenvector_check(const ScalarMatrix& x, const Vec<Scalar>& rho, const Scalar& a);
/// n + 1.
int max_extension_bound(int n);

enum class ViolationKind {
  Shape,
  FBound,
  ANormalization,
  Symplectic,
  Commutation,
  Nullspace,
  Nilindependence,
};
std::string to_string(ViolationKind kind);

struct ValidationError : Error {
  ValidationError(ViolationKind kind, const std::string& what)
      : Error(to_string(kind) + ": " + what), kind(kind) {}
  ViolationKind kind;
};

/// Field a spec is posed over: C when any scalar carries a negative radicand.
Field spec_field(const ExtensionSpec& spec);

struct SpecCheck {
  std::vector<std::string> warnings;
  NilindependenceResult nilindependence;
};

/// Throws ValidationError on the first violated side condition. The
/// nilindependence requirement is enforced where it is decidable and reported
/// as a warning otherwise.
SpecCheck validate_extension(const ExtensionSpec& spec);

/// Basis (S_1..S_f, H, P_1..P_n, B_1..B_n). Validates first.
StructTensor build_extension(const ExtensionSpec& spec);
/// Same assembly without validation; for exercising invalid inputs.
StructTensor build_extension_unchecked(const ExtensionSpec& spec);

/// Labels "S"/"S1".., "H", "P"/"P1".., "B"/"B1"..
std::vector<std::string> extension_labels(int n, int f);

/// Index helpers for the extension basis.
struct ExtensionLayout {
  int n;
  int f;
  std::size_t s(int alpha) const { return static_cast<std::size_t>(alpha); }
  std::size_t h() const { return static_cast<std::size_t>(f); }
  std::size_t p(int i) const { return static_cast<std::size_t>(f + 1 + i); }
  std::size_t b(int i) const { return static_cast<std::size_t>(f + 1 + n + i); }
  std::size_t dim() const { return static_cast<std::size_t>(2 * n + 1 + f); }
  /// (H, P, B) indices in order.
  std::vector<std::size_t> nilradical() const;
};

/// Row-convention (2n+1) x (2n+1) matrices of L_{S_a} and R_{S_a} on (H, P, B).
ScalarMatrix left_action_block(const StructTensor& t, const ExtensionLayout& layout, int alpha);
ScalarMatrix right_action_block(const StructTensor& t, const ExtensionLayout& layout, int alpha);
/// Expected blocks diag(2a, aI + X) and [[-2a, 0], [rho, -aI - X]].
ScalarMatrix expected_left_block(const ExtensionSpec& spec, int alpha);
ScalarMatrix expected_right_block(const ExtensionSpec& spec, int alpha);

/// span(H, P, B) of a built extension.
Subspace heisenberg_subspace(const ExtensionLayout& layout);

}  // namespace heisenleib
