#include "heisenleib/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "heisenleib/catalog.hpp"
#include "heisenleib/constraints.hpp"
#include "heisenleib/io.hpp"

namespace heisenleib {

using nlohmann::json;

namespace {

struct Context {
  const CommandRequest& req;
  std::ostream& out;
  std::ostream& err;
  bool machine() const { return req.format == Format::Machine; }
  void record(const json& j) const { out << j.dump() << "\n"; }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json to_json(const Vec<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json to_json(const ScalarMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const Fingerprint& fp) {
  return {{"dim", fp.dim},
          {"derived_dims", fp.derived_dims},
          {"lower_central_dims", fp.lower_central_dims},
          {"ann_left_dim", fp.ann_left_dim},
          {"center_dim", fp.center_dim},
          {"is_lie", fp.is_lie},
          {"is_solvable", fp.is_solvable},
          {"is_nilpotent", fp.is_nilpotent}};
}

json to_json(const Params& p) {
  json o = json::object();
  for (const auto& [k, v] : p) o[k] = v.to_string();
  return o;
}

std::string matrix_text(const ScalarMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_display();
    s += "]\n";
  }
  return s;
}

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value", "--param " + item);
    try {
      p[item.substr(0, eq)] = Scalar::parse(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), "--param " + item);
    }
  }
  return p;
}

LoadedInput load(const Context& c) {
  if (c.req.inputs.empty()) throw ParseError("missing input file", c.req.subcommand);
  return load_input(read_text_file(c.req.inputs.front()), c.req.max_dim);
}

int cmd_verify(const Context& c) {
  const LoadedInput in = load(c);
  const StructTensor& t = in.tensor;
  const auto failure = first_leibniz_failure(t);
  if (failure) {
    const auto [i, j, k] = *failure;
    const Vec<Scalar> r = leibniz_residual(t, i, j, k);
    const std::string triple = "(" + t.label(i) + "," + t.label(j) + "," + t.label(k) + ")";
    if (c.machine()) {
      c.record({{"check", "leibniz"}, {"ok", false}, {"triple", {t.label(i), t.label(j), t.label(k)}},
                {"residual", to_json(r)}});
    } else {
      c.out << "leibniz: FAIL at " << triple << ", residual " << format_vector(r, t.labels()) << "\n";
    }
    return exit_status::check_failed;
  }
  const bool lie = is_lie(t);
  const bool nil = is_nilpotent(t);
  if (c.machine()) {
    c.record({{"check", "leibniz"}, {"ok", true}});
    c.record({{"check", "lie"}, {"value", lie}});
    c.record({{"check", "nilpotent"}, {"value", nil}});
  } else {
    c.out << "leibniz: ok, lie: " << yes_no(lie) << ", nilpotent: " << yes_no(nil) << "\n";
  }
  return exit_status::ok;
}

int cmd_series(const Context& c) {
  const LoadedInput in = load(c);
  const StructTensor& t = in.tensor;
  if (!is_leibniz(t)) {
    c.err << "input is not a Leibniz algebra\n";
    return exit_status::check_failed;
  }
  const auto derived = derived_series(t);
  const auto lower = lower_central_series(t);
  if (c.machine()) {
    c.record({{"check", "derived_series"}, {"dims", dims(derived)}, {"solvable", is_solvable(t)}});
    c.record({{"check", "lower_central_series"}, {"dims", dims(lower)}, {"nilpotent", is_nilpotent(t)}});
    return exit_status::ok;
  }
  auto list = [](const std::vector<std::size_t>& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
    return s + "]";
  };
  c.out << "derived series: " << list(dims(derived)) << " solvable: " << yes_no(is_solvable(t)) << "\n";
  for (const auto& s : derived) c.out << "  " << s.to_string(t.labels()) << "\n";
  c.out << "lower central series: " << list(dims(lower)) << " nilpotent: " << yes_no(is_nilpotent(t)) << "\n";
  for (const auto& s : lower) c.out << "  " << s.to_string(t.labels()) << "\n";
  return exit_status::ok;
}

int cmd_annihilator(const Context& c) {
  const LoadedInput in = load(c);
  const StructTensor& t = in.tensor;
  const Subspace ann = left_annihilator(t);
  const Subspace z = center(t);
  if (c.machine()) {
    c.record({{"check", "left_annihilator"}, {"dim", ann.dim()}, {"basis", ann.to_string(t.labels())}});
    c.record({{"check", "center"}, {"dim", z.dim()}, {"basis", z.to_string(t.labels())}});
  } else {
    c.out << "left annihilator (dim " << ann.dim() << "): " << ann.to_string(t.labels()) << "\n";
    c.out << "center (dim " << z.dim() << "): " << z.to_string(t.labels()) << "\n";
  }
  return exit_status::ok;
}

int cmd_fingerprint(const Context& c) {
  const LoadedInput in = load(c);
  const Fingerprint fp = fingerprint(in.tensor);
  if (c.machine()) {
    json j = to_json(fp);
    j["check"] = "fingerprint";
    c.record(j);
  } else {
    c.out << fp.to_string() << "\n";
  }
  return exit_status::ok;
}

Subspace candidate_nilradical(const Context& c, const LoadedInput& in) {
  const std::size_t n = in.tensor.dim();
  if (!c.req.span.empty()) {
    for (auto i : c.req.span) {
      if (i >= n) throw DomainError("--span index " + std::to_string(i) + " out of range");
    }
    return Subspace::coordinate(n, c.req.span);
  }
  if (in.spec) return heisenberg_subspace(ExtensionLayout{in.spec->n, in.spec->f});
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    const char head = in.tensor.label(i).empty() ? ' ' : in.tensor.label(i)[0];
    if (head == 'H' || head == 'P' || head == 'B') idx.push_back(i);
  }
  if (idx.empty()) throw DomainError("no candidate nilradical; pass --span");
  return Subspace::coordinate(n, idx);
}

int cmd_nilradical(const Context& c) {
  const LoadedInput in = load(c);
  const StructTensor& t = in.tensor;
  if (!is_leibniz(t)) {
    c.err << "input is not a Leibniz algebra\n";
    return exit_status::check_failed;
  }
  const Subspace n = candidate_nilradical(c, in);
  const Field field = in.field == Field::Complex ? Field::Complex : c.req.field;
  const NilradicalCertificate cert = certify_nilradical(t, n, field, c.req.inputs.front());
  const bool bound = mubar_bound_check(t, n);
  if (c.machine()) {
    json j{{"check", "nilradical"},
           {"candidate", n.to_string(t.labels())},
           {"field", to_string(field)},
           {"ideal", cert.ideal},
           {"nilpotent", cert.nilpotent},
           {"contains_derived", cert.contains_derived},
           {"maximality", to_string(cert.maximality)},
           {"method", cert.method},
           {"proved", cert.proved()}};
    if (cert.witness) j["witness"] = to_json(*cert.witness);
    c.record(j);
    c.record({{"check", "dimension_bound"}, {"ok", bound}});
  } else {
    c.out << "candidate: " << n.to_string(t.labels()) << " over " << to_string(field) << "\n";
    c.out << "ideal: " << yes_no(cert.ideal) << ", nilpotent: " << yes_no(cert.nilpotent)
          << ", contains [L,L]: " << yes_no(cert.contains_derived) << "\n";
    c.out << "maximality: " << to_string(cert.maximality) << " (" << cert.method << ")\n";
    if (cert.witness) c.out << "witness: " << format_vector(*cert.witness, t.labels()) << "\n";
    c.out << "dim N >= dim L / 2: " << yes_no(bound) << "\n";
  }
  return cert.proved() && bound ? exit_status::ok : exit_status::check_failed;
}

json bindings_json(const Bindings& b) {
  json a = json::array();
  for (const auto& x : b) a.push_back({{"var", x.var}, {"value", x.value.to_string()}});
  return a;
}

int cmd_derive(const Context& c) {
  const CascadeResult res = run_cascade(c.req.n, c.req.f, c.req.a1);
  const bool free_ok = res.free_variables == res.expected_free_variables;
  const bool ok = free_ok && res.residuals_in_full_span;
  if (c.machine()) {
    for (const auto& st : res.stages) {
      for (const auto& rep : st.reports) {
        json polys = json::array();
        for (std::size_t i = 0; i < rep.residual_polys.size(); ++i) {
          polys.push_back({{"component", rep.components[i]}, {"poly", rep.residual_polys[i].to_string()}});
        }
        c.record({{"stage", st.name},
                  {"source", rep.source},
                  {"table_row", rep.table_row},
                  {"residuals", polys},
                  {"forced", bindings_json(rep.forced)}});
      }
      c.record({{"stage", st.name}, {"bindings", bindings_json(st.bindings)}, {"notes", st.notes}});
    }
    c.record({{"check", "free_variables"},
              {"ok", free_ok},
              {"free", res.free_variables},
              {"expected", res.expected_free_variables}});
    c.record({{"check", "residuals"},
              {"count", res.residuals.size()},
              {"in_stated_span", res.residuals_in_stated_span},
              {"in_full_span", res.residuals_in_full_span},
              {"notes", res.notes}});
    return ok ? exit_status::ok : exit_status::check_failed;
  }
  c.out << "cascade n=" << res.n << " f=" << res.f << " a1=" << res.a1 << "\n";
  for (const auto& st : res.stages) {
    c.out << "== " << st.name << "\n";
    for (const auto& rep : st.reports) {
      c.out << "  " << rep.source;
      if (!rep.table_row.empty()) c.out << "  [" << rep.table_row << "]";
      c.out << "\n";
      for (std::size_t i = 0; i < rep.residual_polys.size(); ++i) {
        c.out << "    " << rep.components[i] << ": " << rep.residual_polys[i].to_string() << "\n";
      }
      for (const auto& b : rep.forced) c.out << "    => " << to_string(b) << "\n";
    }
    for (const auto& b : st.bindings) c.out << "  binding " << to_string(b) << "\n";
    for (const auto& note : st.notes) c.out << "  note: " << note << "\n";
  }
  c.out << "free variables:";
  for (const auto& v : res.free_variables) c.out << " " << v;
  c.out << "\nexpected free variables: " << (free_ok ? "match" : "MISMATCH") << "\n";
  c.out << "remaining Jacobi residuals: " << res.residuals.size() << ", in span of stated side conditions: "
        << yes_no(res.residuals_in_stated_span) << ", with cross conditions: " << yes_no(res.residuals_in_full_span)
        << "\n";
  for (const auto& note : res.notes) c.out << "note: " << note << "\n";
  return ok ? exit_status::ok : exit_status::check_failed;
}

int cmd_catalog_list(const Context& c) {
  for (const auto& e : catalog_entries(c.req.field)) {
    if (c.machine()) {
      json slots = json::array();
      for (const auto& s : e.params) slots.push_back({{"name", s.name}, {"domain", s.domain}});
      c.record({{"id", e.id}, {"field", to_string(e.field)}, {"n", e.n}, {"f", e.f}, {"a1", e.a1},
                {"params", slots}, {"display", e.display}});
      continue;
    }
    c.out << e.id << "  (f=" << e.f << ", a1=" << e.a1 << ")  " << e.display;
    for (const auto& s : e.params) c.out << "; " << s.domain;
    c.out << "\n";
  }
  return exit_status::ok;
}

int cmd_catalog_build(const Context& c, std::ostream& out) {
  if (!c.req.id) throw ParseError("missing entry id", "catalog build");
  const StructTensor t = build_entry(*c.req.id, parse_params(c.req.params), c.req.field);
  out << algebra_to_json(t);
  return exit_status::ok;
}

int cmd_catalog_verify(const Context& c) {
  const auto reports = verify_catalog(c.req.field, c.req.id);
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.ok();
    if (c.machine()) {
      c.record({{"id", r.id},
                {"field", to_string(r.field)},
                {"params", to_json(r.params)},
                {"ok", r.ok()},
                {"dim", r.dim},
                {"leibniz", r.leibniz_ok},
                {"lie", r.lie_flag},
                {"lie_expected", r.lie_expected},
                {"display", r.display_ok},
                {"nilradical", to_string(r.certificate.maximality)},
                {"nilradical_method", r.certificate.method},
                {"dimension_bound", r.mubar_ok},
                {"fingerprint", to_json(r.fingerprint)}});
      continue;
    }
    c.out << (r.ok() ? "ok   " : "FAIL ") << r.id;
    if (!r.params.empty()) c.out << " [" << params_to_string(r.params) << "]";
    c.out << ": dim " << r.dim << ", leibniz " << (r.leibniz_ok ? "ok" : "FAIL") << ", lie " << yes_no(r.lie_flag)
          << ", nilradical H(1) " << to_string(r.certificate.maximality) << ", bound "
          << (r.mubar_ok ? "ok" : "FAIL") << "\n";
  }
  if (!c.req.id) {
    const DistinctnessReport d = distinctness_report(c.req.field);
    for (const auto& p : d.pairs) {
      if (c.machine()) {
        json j{{"pair", {p.first, p.second}}, {"separated_by", p.separated_by}, {"flagged", p.flagged}};
        if (p.isomorphism) j["isomorphism"] = to_json(*p.isomorphism);
        c.record(j);
        continue;
      }
      if (!p.flagged) continue;
      c.out << "not separated by invariants: " << p.first << " vs " << p.second;
      if (p.isomorphism) c.out << " (isomorphic via diagonal sign change)";
      c.out << "\n";
    }
  }
  return all ? exit_status::ok : exit_status::check_failed;
}

int cmd_witness(const Context& c) {
  if (c.req.inputs.size() != 2) throw ParseError("expected <real-id> <complex-id>", "witness");
  const CondensationWitness w = condensation_witness(c.req.inputs[0], c.req.inputs[1], parse_params(c.req.params));
  if (c.machine()) {
    c.record({{"real", w.real_id},
              {"complex", w.complex_id},
              {"real_params", to_json(w.real_params)},
              {"complex_params", to_json(w.complex_params)},
              {"matrix", to_json(w.matrix)},
              {"verified", w.verified}});
  } else {
    c.out << w.real_id << " [" << params_to_string(w.real_params) << "] -> " << w.complex_id << " ["
          << params_to_string(w.complex_params) << "]\n";
    c.out << "new basis (rows, old coordinates ";
    for (std::size_t i = 0; i < w.real_tensor.dim(); ++i) c.out << (i ? "," : "") << w.real_tensor.label(i);
    c.out << "):\n" << matrix_text(w.matrix);
    c.out << "change of basis reproduces the complex tensor: " << yes_no(w.verified) << "\n";
  }
  return w.verified ? exit_status::ok : exit_status::check_failed;
}

int dispatch(const Context& c, std::ostream& out) {
  const std::string& s = c.req.subcommand;
  if (s == "verify") return cmd_verify(c);
  if (s == "series") return cmd_series(c);
  if (s == "annihilator") return cmd_annihilator(c);
  if (s == "fingerprint") return cmd_fingerprint(c);
  if (s == "nilradical") return cmd_nilradical(c);
  if (s == "derive") return cmd_derive(c);
  if (s == "catalog-list") return cmd_catalog_list(c);
  if (s == "catalog-build") return cmd_catalog_build(c, out);
  if (s == "catalog-verify") return cmd_catalog_verify(c);
  if (s == "witness") return cmd_witness(c);
  throw ParseError("unknown subcommand '" + s + "'");
}

}  // namespace

std::size_t max_dim_from_env() {
  const char* v = std::getenv("HEISENLEIB_MAX_DIM");
  if (!v || !*v) return 16;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0) return 16;
  return n;
}

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  std::ostream& sink = request.output ? static_cast<std::ostream&>(buffer) : out;
  int status = exit_status::ok;
  try {
    const Context c{request, sink, err};
    status = dispatch(c, sink);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_status::parse_error;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_status::validation_error;
  } catch (const InconsistencyError& e) {
    err << "check failed: " << e.what() << "\n";
    return exit_status::check_failed;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_status::validation_error;
  }
  if (request.output) {
    std::ofstream file(*request.output, std::ios::binary);
    if (!file) {
      err << "parse error: cannot write " << *request.output << "\n";
      return exit_status::parse_error;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace heisenleib
