#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heisenleib/algebra.hpp"
#include "heisenleib/heisenberg.hpp"

namespace heisenleib {

struct Binding {
  std::string var;
  PolyQ value;
  friend bool operator==(const Binding&, const Binding&) = default;
};
using Bindings = std::vector<Binding>;

std::string to_string(const Binding& b);

struct AppliedConstraint {
  std::string stage;
  Bindings bindings;
};

/// Extension of H(n) by S_1..S_f whose S-products are symbolic.
///
/// Indeterminates are declared kind by kind: a, b, sigma1, sigma2, tau1, tau2,
/// gamma1, gamma2, rho1, rho2, A, C, D, E, F, G, M, N, r, mu, nu. Within a kind
/// the order is by (alpha, i, j). Linear elimination solves for the latest
/// declared indeterminate, which yields bindings such as E := -A^T and b := -a.
struct ParamAlgebra {
  int n = 1;
  int f = 1;
  VarListPtr vars;
  ParamTensor tensor;
  std::vector<AppliedConstraint> applied;

  ExtensionLayout layout() const { return {n, f}; }
  bool has_stage(const std::string& stage) const;
  PolyQ var(const std::string& name) const { return PolyQ::variable(vars, name); }
  /// Value fixed for a_1 by the a-normalization step, if it ran.
  std::optional<Rational> a1_normalized() const;
  /// Indeterminates still present in the tensor.
  std::vector<std::string> free_variables() const;
};

/// Indeterminate names, 1-based: a_1, sigma1_1_2, A_1_2_1, r_1_2, mu_1_2_1.
std::string param_name(const std::string& kind, int alpha);
std::string param_name(const std::string& kind, int alpha, int i);
std::string param_name(const std::string& kind, int alpha, int i, int j);

ParamAlgebra parametric_extension(int n, int f);
ParamAlgebra apply_bindings(const ParamAlgebra& pa, const std::string& stage, const Bindings& bindings);
/// Re-applies the recorded constraints to a fresh parametric extension.
ParamAlgebra replay(int n, int f, const std::vector<AppliedConstraint>& applied);

struct ConstraintReport {
  std::string stage;
  std::string source;
  /// Paper-style row this report instantiates, empty if none.
  std::string table_row;
  Bindings forced;
  std::vector<PolyQ> residual_polys;
  /// Basis label (or matrix position) each residual polynomial belongs to.
  std::vector<std::string> components;

  /// Residual polynomial at a component label, zero if absent.
  PolyQ component(const std::string& label) const;
};

/// Rows are new basis vectors: S~_a = S_a + sum gamma1_i B_i - sum gamma2_i P_i.
PolyMatrix gamma_change_of_basis(const ParamAlgebra& pa);
/// Tensor expressed in the gamma-shifted basis.
ParamTensor gamma_transformed_tensor(const ParamAlgebra& pa);
/// Performs the shift, checks the H-components of [S~,P] and [S~,B] vanish, and
/// re-parameterizes with gamma := 0.
ParamAlgebra gamma_eliminate(const ParamAlgebra& pa);

/// Jacobi residuals [[x,y],z] + [y,[x,z]] - [x,[y,z]] for every basis triple
/// with a nonzero residual, in triple-index order.
std::vector<ConstraintReport> jacobi_residual_system(const ParamAlgebra& pa);
/// The subset of reports tagged with a table row.
std::vector<ConstraintReport> table_reports(const std::vector<ConstraintReport>& reports);

/// [[S_a,Y] + [Y,S_a], Z] for Y over the basis and Z over the nilradical (and
/// Z = S_1 once a_1 has been normalized to 1), plus the right-action triples
/// (P_i, B_j, S_a). Throws OrderingError before the Jacobi stage.
std::vector<ConstraintReport> annihilator_residual_system(const ParamAlgebra& pa);

/// Entries of L_a L_b - L_b L_a and L_a R_b - R_b L_a for the (2n+1)-square
/// row-convention blocks on (H, P, B). Throws OrderingError before the
/// annihilator stage.
std::vector<ConstraintReport> commutation_residual_system(const ParamAlgebra& pa);

struct ArarReport {
  std::vector<ConstraintReport> pairs;
  /// H-coefficient of each (S_1, S_a, S_b) residual equals
  /// -2 (a_1 r_ab - a_a r_1b + a_b r_1a) under the bindings applied so far.
  bool identity_holds = true;
};
/// Throws DomainError for f < 2 and OrderingError before the commutation stage.
ArarReport verify_arar(const ParamAlgebra& pa);

/// Linear elimination over the residuals: every residual of degree <= 1 joins
/// a row-reduced system; the resulting bindings are substituted into the
/// others and the process repeats. Nonlinear leftovers pass through. Fills
/// each report's `forced` with the bindings of indeterminates it mentions.
/// Throws InconsistencyError when the system forces 0 = c with c != 0.
Bindings extract_forced_bindings(std::vector<ConstraintReport>& reports);

/// Named binding step a_1 := a1, a_k := 0 for k > 1.
ParamAlgebra normalize_a(const ParamAlgebra& pa, int a1);

/// With a_1 = 1, the shift S~_a = S_a - (r_1a / 2) H removes r_1a; checked
/// against the binding r_1a := 0.
ParamAlgebra h_shift(const ParamAlgebra& pa);

/// Change of basis on the S-block of a concrete extension giving a = (1 or 0, 0, ...).
ScalarMatrix a_normalization_matrix(const StructTensor& t, const ExtensionLayout& layout);

struct StageTranscript {
  std::string name;
  std::vector<ConstraintReport> reports;
  Bindings bindings;
  std::vector<std::string> notes;
};

struct CascadeResult {
  int n = 1;
  int f = 1;
  int a1 = 0;
  ParamAlgebra final_algebra;
  std::vector<StageTranscript> stages;
  std::vector<std::string> free_variables;
  std::vector<std::string> expected_free_variables;
  /// Nonzero Jacobi residuals of the final algebra.
  std::vector<PolyQ> residuals;
  /// Residuals in the rational span of the commutators X_a X_b - X_b X_a and
  /// the eigenvector entries (X_a - a_a) rho^a.
  bool residuals_in_stated_span = false;
  /// Same, adding the cross entries (X_a - a_a) rho^b for a != b.
  bool residuals_in_full_span = false;
  std::vector<std::string> notes;

  Bindings all_bindings() const;
  const StageTranscript* stage(const std::string& name) const;
};

CascadeResult run_cascade(int n, int f, int a1);

/// Side-condition generators of the final algebra: commutator entries and
/// eigenvector entries (cross entries included when `cross` is set).
std::vector<PolyQ> side_condition_generators(const ParamAlgebra& pa, bool cross);
/// p lies in the rational span of gens.
bool in_rational_span(const std::vector<PolyQ>& gens, const PolyQ& p);

}  // namespace heisenleib
