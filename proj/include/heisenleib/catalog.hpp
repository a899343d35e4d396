#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heisenleib/heisenberg.hpp"

namespace heisenleib {

using Params = std::map<std::string, Scalar>;

struct ParamSlot {
  std::string name;
  std::string domain;
  /// Values swept by catalog verification.
  std::vector<Scalar> samples;
  /// The domain is a finite set and `samples` lists all of it.
  bool discrete = false;
};

/// A classification family of extensions of H(1), stored as a builder.
struct CatalogEntry {
  std::string id;
  Field field = Field::Real;
  int n = 1;
  int f = 1;
  int a1 = 1;
  std::vector<ParamSlot> params;
  /// Displayed left multiplication of the S elements on (H, P, B).
  std::string display;

  const ParamSlot* slot(const std::string& name) const;
};

/// Entries listed over `field`, ordered by id.
std::vector<CatalogEntry> catalog_entries(Field field);
/// Throws DomainError listing the valid ids when `id` is not listed over `field`.
const CatalogEntry& find_entry(const std::string& id, Field field);
std::vector<std::string> entry_ids(Field field);

/// A family at fixed discrete parameters, e.g. "H1a0C[r=1]".
struct CatalogCase {
  std::string label;
  std::string id;
  int f = 1;
  int a1 = 1;
  Params discrete;
};
std::vector<CatalogCase> catalog_cases(Field field);

/// Throws DomainError for a missing, unknown or out-of-domain parameter.
ExtensionSpec entry_spec(const std::string& id, const Params& params, Field field);
StructTensor build_entry(const std::string& id, const Params& params, Field field);
/// The displayed L_{S_a} blocks, written out independently of the builder.
std::vector<ScalarMatrix> displayed_left_blocks(const std::string& id, const Params& params);

/// Cartesian product of the slot samples.
std::vector<Params> sample_parameters(const CatalogEntry& entry);
std::string params_to_string(const Params& params);

struct VerificationReport {
  std::string id;
  Field field = Field::Real;
  Params params;
  std::size_t dim = 0;
  bool leibniz_ok = false;
  bool lie_flag = false;
  /// r = 0 and rho = 0.
  bool lie_expected = false;
  bool display_ok = false;
  Fingerprint fingerprint;
  NilradicalCertificate certificate;
  bool nilradical_is_heisenberg = false;
  bool mubar_ok = false;
  bool dim_ok = false;

  bool ok() const;
};

VerificationReport verify_entry(const std::string& id, const Params& params, Field field);
/// Every entry (or only `id`) at every sample.
std::vector<VerificationReport> verify_catalog(Field field, const std::optional<std::string>& id = std::nullopt);

struct CondensationWitness {
  std::string real_id;
  std::string complex_id;
  Params real_params;
  Params complex_params;
  /// Rows are the new basis vectors over Q(i).
  ScalarMatrix matrix;
  StructTensor real_tensor;
  StructTensor complex_tensor;
  /// change_basis(real_tensor, matrix) == complex_tensor.
  bool verified = false;
};

/// Change of basis from a real family to its complex counterpart. Documented
/// pairs: (H1a1R, H1a1C-diag), (H1a0R, H1a0C), (H2a1R, H2a1C), (H1a0C, H1a0C)
/// with r = -1 going to r = 1, and any entry to itself. Throws NoWitnessError
/// for other pairs.
CondensationWitness condensation_witness(const std::string& real_id, const std::string& complex_id,
                                         const Params& params);

struct CaseInvariants {
  std::string label;
  Params params;
  Fingerprint fingerprint;
  /// rank of (L_{S_1} - a_1 I) on span(P, B).
  std::size_t jordan_rank = 0;
  /// Sign of det X for the last S element; meaningful over R only.
  int det_sign = 0;
};

struct PairComparison {
  std::string first;
  std::string second;
  std::vector<std::string> separated_by;
  /// Set when no listed invariant separates the pair.
  bool flagged = false;
  /// A verified sign-change isomorphism between flagged cases, if one exists.
  std::optional<ScalarMatrix> isomorphism;
};

struct DistinctnessReport {
  Field field = Field::Real;
  std::vector<CaseInvariants> cases;
  std::vector<PairComparison> pairs;
};

/// Pairwise invariant comparison of every case at representative parameters
/// (A = 0, C = 1).
DistinctnessReport distinctness_report(Field field);

}  // namespace heisenleib
