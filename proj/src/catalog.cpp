#include "heisenleib/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace heisenleib {

namespace {

bool is_real(const Scalar& x) { return x.radicand() >= 0; }

int imaginary_sign(const Scalar& x) { return x.radicand() < 0 ? sgn(x.radical_coeff()) : 0; }

ParamSlot slot_A(Field field) {
  ParamSlot s{"A", field == Field::Real ? "A >= 0" : "Re A > 0, or Re A = 0 and Im A >= 0", {}, false};
  s.samples = {Scalar(0), Scalar::fraction(1, 2), Scalar(1), Scalar(3)};
  return s;
}

ParamSlot slot_C() { return {"C", "C > 0", {Scalar(1), Scalar(2)}, false}; }

ParamSlot slot_r(Field field) {
  if (field == Field::Complex) return {"r", "r in {0, 1}", {Scalar(0), Scalar(1)}, true};
  return {"r", "r in {0, 1, -1}", {Scalar(0), Scalar(1), Scalar(-1)}, true};
}

std::vector<CatalogEntry> make_entries(Field field) {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string id, int f, int a1, std::vector<ParamSlot> slots, std::string display) {
    out.push_back({std::move(id), field, 1, f, a1, std::move(slots), std::move(display)});
  };
  add("H1a0C", 1, 0, {slot_r(field)}, "L_S = diag(0, 1, -1), [S,S] = rH");
  if (field == Field::Real) add("H1a0R", 1, 0, {slot_r(field)}, "L_S = diag(0, [[0, 1], [-1, 0]]), [S,S] = rH");
  add("H1a1C-diag", 1, 1, {slot_A(field)}, "L_S = diag(2, 1+A, 1-A)");
  add("H1a1C-jordan", 1, 1, {}, "L_S = diag(2, [[1, 1], [0, 1]])");
  if (field == Field::Real) add("H1a1R", 1, 1, {slot_C()}, "L_S = diag(2, [[1, C], [-C, 1]])");
  add("H2a1C", 2, 1, {}, "L_S1 = diag(2, 1, 1), L_S2 = diag(0, 1, -1)");
  if (field == Field::Real) add("H2a1R", 2, 1, {}, "L_S1 = diag(2, 1, 1), L_S2 = diag(0, [[0, 1], [-1, 0]])");
  return out;
}

const std::vector<CatalogEntry>& entries_for(Field field) {
  static const std::vector<CatalogEntry> complex_entries = make_entries(Field::Complex);
  static const std::vector<CatalogEntry> real_entries = make_entries(Field::Real);
  return field == Field::Complex ? complex_entries : real_entries;
}

void check_domain(const CatalogEntry& e, const ParamSlot& slot, const Scalar& v) {
  auto fail = [&] {
    throw DomainError(e.id + ": " + slot.name + " = " + v.to_display() + " violates " + slot.domain);
  };
  if (e.field == Field::Real && !is_real(v)) fail();
  if (slot.discrete) {
    if (std::find(slot.samples.begin(), slot.samples.end(), v) == slot.samples.end()) fail();
    return;
  }
  if (slot.name == "C") {
    if (!is_real(v) || v.real_sign() <= 0) fail();
  } else if (slot.name == "A") {
    if (is_real(v)) {
      if (v.real_sign() < 0) fail();
    } else {
      const int re = sgn(v.rational_part());
      if (re < 0 || (re == 0 && imaginary_sign(v) < 0)) fail();
    }
  }
}

Scalar param(const Params& p, const std::string& name) {
  auto it = p.find(name);
  return it == p.end() ? Scalar() : it->second;
}

ScalarMatrix mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
  ScalarMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

ScalarMatrix rotation() { return mat2(0, 1, -1, 0); }
ScalarMatrix hyperbolic() { return mat2(1, 0, 0, -1); }

ScalarMatrix block3(const Scalar& h, const ScalarMatrix& y) {
  ScalarMatrix m(3, 3);
  m(0, 0) = h;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) m(i + 1, j + 1) = y(i, j);
  }
  return m;
}

Scalar det2(const ScalarMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

const ParamSlot* CatalogEntry::slot(const std::string& name) const {
  for (const auto& s : params) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<CatalogEntry> catalog_entries(Field field) { return entries_for(field); }

std::vector<std::string> entry_ids(Field field) {
  std::vector<std::string> ids;
  for (const auto& e : entries_for(field)) ids.push_back(e.id);
  return ids;
}

const CatalogEntry& find_entry(const std::string& id, Field field) {
  for (const auto& e : entries_for(field)) {
    if (e.id == id) return e;
  }
  std::string valid;
  for (const auto& v : entry_ids(field)) valid += (valid.empty() ? "" : ", ") + v;
  throw DomainError("unknown catalog entry '" + id + "' over " + to_string(field) + "; valid ids: " + valid);
}

std::vector<CatalogCase> catalog_cases(Field field) {
  std::vector<CatalogCase> out;
  for (const auto& e : entries_for(field)) {
    const ParamSlot* r = e.slot("r");
    if (!r) {
      out.push_back({e.id, e.id, e.f, e.a1, {}});
      continue;
    }
    for (const auto& v : r->samples) out.push_back({e.id + "[r=" + v.to_display() + "]", e.id, e.f, e.a1, {{"r", v}}});
  }
  return out;
}

std::string params_to_string(const Params& params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : ",") + k + "=" + v.to_display();
  return s;
}

ExtensionSpec entry_spec(const std::string& id, const Params& params, Field field) {
  const CatalogEntry& e = find_entry(id, field);
  for (const auto& [name, value] : params) {
    const ParamSlot* s = e.slot(name);
    if (!s) throw DomainError(id + " has no parameter '" + name + "'");
    check_domain(e, *s, value);
  }
  for (const auto& s : e.params) {
    if (!params.count(s.name)) throw DomainError(id + " needs parameter " + s.name);
  }

  ExtensionSpec spec = ExtensionSpec::zeros(1, e.f);
  spec.a[0] = Scalar(e.a1);
  ScalarMatrix& x = spec.X[static_cast<std::size_t>(e.f - 1)];
  if (id == "H1a1C-diag") {
    const Scalar a = param(params, "A");
    x = mat2(a, 0, 0, -a);
  } else if (id == "H1a1C-jordan") {
    x = mat2(0, 1, 0, 0);
  } else if (id == "H1a1R") {
    const Scalar c = param(params, "C");
    x = mat2(0, c, -c, 0);
  } else if (id == "H1a0C" || id == "H2a1C") {
    x = hyperbolic();
  } else if (id == "H1a0R" || id == "H2a1R") {
    x = rotation();
  }
  if (e.slot("r")) spec.r(0, 0) = param(params, "r");
  return spec;
}

StructTensor build_entry(const std::string& id, const Params& params, Field field) {
  return build_extension(entry_spec(id, params, field));
}

std::vector<ScalarMatrix> displayed_left_blocks(const std::string& id, const Params& params) {
  const ScalarMatrix one = ScalarMatrix::identity(2);
  if (id == "H1a1C-diag") {
    const Scalar a = param(params, "A");
    return {block3(2, mat2(Scalar(1) + a, 0, 0, Scalar(1) - a))};
  }
  if (id == "H1a1C-jordan") return {block3(2, mat2(1, 1, 0, 1))};
  if (id == "H1a1R") {
    const Scalar c = param(params, "C");
    return {block3(2, mat2(1, c, -c, 1))};
  }
  if (id == "H1a0C") return {block3(0, hyperbolic())};
  if (id == "H1a0R") return {block3(0, rotation())};
  if (id == "H2a1C") return {block3(2, one), block3(0, hyperbolic())};
  if (id == "H2a1R") return {block3(2, one), block3(0, rotation())};
  throw DomainError("no display for '" + id + "'");
}

std::vector<Params> sample_parameters(const CatalogEntry& entry) {
  std::vector<Params> out{{}};
  for (const auto& s : entry.params) {
    std::vector<Params> next;
    for (const auto& p : out) {
      for (const auto& v : s.samples) {
        Params q = p;
        q[s.name] = v;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool VerificationReport::ok() const {
  return leibniz_ok && lie_flag == lie_expected && display_ok && certificate.proved() && nilradical_is_heisenberg &&
         mubar_ok && dim_ok;
}

VerificationReport verify_entry(const std::string& id, const Params& params, Field field) {
  const ExtensionSpec spec = entry_spec(id, params, field);
  const StructTensor t = build_extension(spec);
  const ExtensionLayout layout{spec.n, spec.f};
  VerificationReport rep;
  rep.id = id;
  rep.field = field;
  rep.params = params;
  rep.dim = t.dim();
  rep.leibniz_ok = is_leibniz(t);
  rep.lie_flag = is_lie(t);
  rep.lie_expected = spec.r.is_zero() && std::all_of(spec.rho.begin(), spec.rho.end(), is_zero_vector<Scalar>);
  const auto shown = displayed_left_blocks(id, params);
  rep.display_ok = shown.size() == static_cast<std::size_t>(spec.f);
  for (int al = 0; rep.display_ok && al < spec.f; ++al) {
    rep.display_ok = left_action_block(t, layout, al) == shown[static_cast<std::size_t>(al)];
  }
  rep.fingerprint = fingerprint(t);
  const Subspace h = heisenberg_subspace(layout);
  rep.certificate = certify_nilradical(t, h, field, id);
  rep.nilradical_is_heisenberg = rep.certificate.nilradical == h && h.dim() == 3;
  rep.mubar_ok = mubar_bound_check(t, h);
  rep.dim_ok = rep.dim == static_cast<std::size_t>(3 + spec.f);
  return rep;
}

std::vector<VerificationReport> verify_catalog(Field field, const std::optional<std::string>& id) {
  if (id) find_entry(*id, field);
  std::vector<VerificationReport> out;
  for (const auto& e : entries_for(field)) {
    if (id && e.id != *id) continue;
    for (const auto& p : sample_parameters(e)) out.push_back(verify_entry(e.id, p, field));
  }
  return out;
}

namespace {

// Left eigenvector of a traceless 2x2 matrix for eigenvalue k, first nonzero
// coordinate scaled to 1.
Vec<Scalar> left_eigenvector(const ScalarMatrix& x, const Scalar& k) {
  const Scalar& p = x(0, 0);
  Vec<Scalar> v{x(1, 0), k - p};
  if (is_zero_vector(v)) v = {k + p, x(0, 1)};
  const Scalar lead = v[0].is_zero() ? v[1] : v[0];
  for (auto& c : v) c = c / lead;
  return v;
}

ScalarMatrix condense(const ExtensionSpec& src, const ExtensionSpec& dst) {
  if (src.n != 1 || dst.n != 1 || src.f != dst.f) throw NoWitnessError("witnesses cover extensions of H(1) only");
  const ExtensionLayout l{1, src.f};
  const auto act = static_cast<std::size_t>(src.f - 1);
  const ScalarMatrix& target = dst.X[act];
  if (!target(0, 1).is_zero() || !target(1, 0).is_zero()) throw NoWitnessError("target X is not diagonal");

  ScalarMatrix p(l.dim(), l.dim());
  std::vector<Scalar> lambda(static_cast<std::size_t>(src.f), Scalar(1));
  for (int al = 0; al < src.f; ++al) {
    const auto ua = static_cast<std::size_t>(al);
    if (src.a[ua].is_zero() && !src.X[ua].is_zero()) {
      // S~ = S / lambda with lambda^2 = det X / det X~
      Scalar root;
      if (!field_sqrt(det2(src.X[ua]) / det2(dst.X[ua]), root)) throw NoWitnessError("no S rescaling in Q(i)");
      lambda[ua] = root;
    }
    p(l.s(al), l.s(al)) = lambda[ua].inverse();
  }
  const ScalarMatrix x = src.X[act].scaled(lambda[act].inverse());
  const Vec<Scalar> v = left_eigenvector(x, target(0, 0));
  const Vec<Scalar> w = left_eigenvector(x, target(1, 1));
  const Scalar k = v[0] * w[1] - v[1] * w[0];
  if (k.is_zero()) throw NoWitnessError("eigenvectors are dependent");

  Scalar mu(1);
  for (std::size_t al = 0; al < static_cast<std::size_t>(src.f); ++al) {
    for (std::size_t be = 0; be < static_cast<std::size_t>(src.f); ++be) {
      if (dst.r(al, be).is_zero()) continue;
      const Scalar q = src.r(al, be) / (lambda[al] * lambda[be] * k);
      if (!field_sqrt(q / dst.r(al, be), mu)) throw NoWitnessError("no H rescaling in Q(i)");
      break;
    }
  }
  p(l.h(), l.h()) = mu * mu * k;
  for (std::size_t j = 0; j < 2; ++j) {
    p(l.p(0), l.p(0) + j) = mu * v[j];
    p(l.b(0), l.p(0) + j) = mu * w[j];
  }
  return p;
}

}  // namespace

CondensationWitness condensation_witness(const std::string& real_id, const std::string& complex_id,
                                         const Params& params) {
  CondensationWitness out;
  out.real_id = real_id;
  out.complex_id = complex_id;
  out.real_params = params;
  const Scalar r = param(params, "r");
  if (real_id == complex_id) {
    out.complex_params = params;
    if (real_id == "H1a0C" && r == Scalar(-1)) out.complex_params["r"] = Scalar(1);
  } else if (real_id == "H1a1R" && complex_id == "H1a1C-diag") {
    out.complex_params = {{"A", Scalar::i() * param(params, "C")}};
  } else if (real_id == "H1a0R" && complex_id == "H1a0C") {
    out.complex_params = {{"r", Scalar(r.is_zero() ? 0 : 1)}};
  } else if (real_id == "H2a1R" && complex_id == "H2a1C") {
    out.complex_params = {};
  } else {
    throw NoWitnessError("no documented condensation from " + real_id + " to " + complex_id);
  }
  const ExtensionSpec src = entry_spec(real_id, params, Field::Real);
  const auto complex_ids = entry_ids(Field::Complex);
  const Field target_field =
      std::count(complex_ids.begin(), complex_ids.end(), complex_id) ? Field::Complex : Field::Real;
  const ExtensionSpec dst = entry_spec(complex_id, out.complex_params, target_field);
  out.real_tensor = build_extension(src);
  out.complex_tensor = build_extension(dst);
  if (real_id == complex_id && out.real_params == out.complex_params) {
    out.matrix = ScalarMatrix::identity(out.real_tensor.dim());
  } else {
    out.matrix = condense(src, dst);
  }
  out.verified = change_basis(out.real_tensor, out.matrix) == out.complex_tensor;
  return out;
}

namespace {

std::size_t jordan_rank(const StructTensor& t, const ExtensionLayout& l) {
  const std::vector<std::size_t> pb{l.p(0), l.b(0)};
  ScalarMatrix m = left_action_rows(t, l.s(0), pb, pb);
  const Scalar a = t(l.s(0), l.h(), l.h()) * Scalar::fraction(1, 2);
  for (std::size_t i = 0; i < 2; ++i) m(i, i) -= a;
  return rank(m);
}

int det_sign(const StructTensor& t, const ExtensionLayout& l) {
  const std::vector<std::size_t> pb{l.p(0), l.b(0)};
  const int last = l.f - 1;
  ScalarMatrix m = left_action_rows(t, l.s(last), pb, pb);
  const Scalar a = t(l.s(last), l.h(), l.h()) * Scalar::fraction(1, 2);
  for (std::size_t i = 0; i < 2; ++i) m(i, i) -= a;
  const Scalar d = det2(m);
  return d.is_zero() ? 0 : d.real_sign();
}

// Diagonal +-1 changes of basis; enough to relate the r = 1 and r = -1 cases.
std::optional<ScalarMatrix> sign_isomorphism(const StructTensor& x, const StructTensor& y) {
  const std::size_t d = x.dim();
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    ScalarMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i) p(i, i) = Scalar((mask >> i) & 1u ? -1 : 1);
    if (change_basis(x, p) == y) return p;
  }
  return std::nullopt;
}

}  // namespace

DistinctnessReport distinctness_report(Field field) {
  DistinctnessReport rep;
  rep.field = field;
  std::vector<StructTensor> tensors;
  for (const auto& c : catalog_cases(field)) {
    const CatalogEntry& e = find_entry(c.id, field);
    Params p = c.discrete;
    if (e.slot("A")) p["A"] = Scalar(0);
    if (e.slot("C")) p["C"] = Scalar(1);
    const StructTensor t = build_entry(c.id, p, field);
    const ExtensionLayout l{1, e.f};
    CaseInvariants inv;
    inv.label = c.label;
    inv.params = p;
    inv.fingerprint = fingerprint(t);
    inv.jordan_rank = jordan_rank(t, l);
    inv.det_sign = field == Field::Real ? det_sign(t, l) : 0;
    rep.cases.push_back(std::move(inv));
    tensors.push_back(t);
  }
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.cases.size(); ++j) {
      const CaseInvariants& x = rep.cases[i];
      const CaseInvariants& y = rep.cases[j];
      PairComparison pc;
      pc.first = x.label;
      pc.second = y.label;
      pc.separated_by = fingerprint_differences(x.fingerprint, y.fingerprint);
      if (x.jordan_rank != y.jordan_rank) pc.separated_by.push_back("jordan_rank");
      if (x.det_sign != y.det_sign) pc.separated_by.push_back("det_sign");
      pc.flagged = pc.separated_by.empty();
      if (pc.flagged && tensors[i].dim() == tensors[j].dim()) pc.isomorphism = sign_isomorphism(tensors[i], tensors[j]);
      rep.pairs.push_back(std::move(pc));
    }
  }
  return rep;
}

}  // namespace heisenleib
