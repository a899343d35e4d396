#include "heisenleib/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace heisenleib {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("malformed JSON", "line " + std::to_string(line));
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError("missing field", where + key);
  return obj.at(key);
}

long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError("expected an integer", where);
  return v.get<long>();
}

Scalar scalar(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) throw ParseError("expected a scalar string", where);
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what(), where);
  }
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError("expected an array", where);
  return v;
}

}  // namespace

Field tensor_field(const StructTensor& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (t(i, j, k).radicand() < 0) return Field::Complex;
      }
    }
  }
  return Field::Real;
}

StructTensor parse_algebra_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("expected a JSON object", "document");
  const long dim = integer(member(doc, "dim", ""), "dim");
  if (dim < 1) throw ParseError("dimension must be positive", "dim");
  const auto n = static_cast<std::size_t>(dim);

  std::vector<std::string> labels;
  if (doc.contains("basis")) {
    const json& basis = array(doc.at("basis"), "basis");
    if (basis.size() != n) throw ParseError("expected " + std::to_string(n) + " labels", "basis");
    for (std::size_t i = 0; i < n; ++i) {
      if (!basis[i].is_string()) throw ParseError("expected a string", "basis[" + std::to_string(i) + "]");
      labels.push_back(basis[i].get<std::string>());
    }
  }

  long radicand = 0;
  if (doc.contains("field")) {
    const json& f = doc.at("field");
    if (f.is_string() && f.get<std::string>() == "Q") {
      radicand = 0;
    } else if (f.is_object() && f.contains("sqrt")) {
      radicand = integer(f.at("sqrt"), "field.sqrt");
      if (!is_valid_radicand(radicand)) throw ParseError("radicand must be squarefree and not 0 or 1", "field.sqrt");
    } else {
      throw ParseError("expected \"Q\" or {\"sqrt\": d}", "field");
    }
  }

  StructTensor t(n, labels);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  const json& constants = array(member(doc, "constants", ""), "constants");
  for (std::size_t m = 0; m < constants.size(); ++m) {
    const std::string where = "constants[" + std::to_string(m) + "].";
    const json& entry = constants[m];
    std::size_t idx[3];
    const char* keys[] = {"i", "j", "k"};
    for (int a = 0; a < 3; ++a) {
      const long v = integer(member(entry, keys[a], where), where + keys[a]);
      if (v < 0 || v >= dim) throw ParseError("index out of range", where + keys[a]);
      idx[a] = static_cast<std::size_t>(v);
    }
    const Scalar c = scalar(member(entry, "c", where), where + "c");
    if (c.radicand() != 0 && c.radicand() != radicand) {
      throw ParseError("scalar outside the declared field", where + "c");
    }
    if (!seen.insert({idx[0], idx[1], idx[2]}).second) throw ParseError("duplicate constant", where + "k");
    t(idx[0], idx[1], idx[2]) = c;
  }
  return t;
}

std::string algebra_to_json(const StructTensor& t) {
  using ordered = nlohmann::ordered_json;
  const std::size_t n = t.dim();
  ordered constants = ordered::array();
  long radicand = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = t(i, j, k);
        if (c.is_zero()) continue;
        if (c.radicand() != 0) radicand = c.radicand();
        constants.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", c.to_string()}});
      }
    }
  }
  ordered doc;
  doc["dim"] = n;
  doc["basis"] = t.labels();
  doc["field"] = radicand == 0 ? ordered("Q") : ordered{{"sqrt", radicand}};
  doc["constants"] = std::move(constants);
  return doc.dump(2) + "\n";
}

namespace {

Vec<Scalar> scalar_row(const json& v, const std::string& where) {
  Vec<Scalar> out;
  const json& arr = array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(scalar(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ScalarMatrix scalar_matrix(const json& v, const std::string& where) {
  const json& rows = array(v, where);
  std::vector<Vec<Scalar>> data;
  for (std::size_t i = 0; i < rows.size(); ++i) data.push_back(scalar_row(rows[i], where + "[" + std::to_string(i) + "]"));
  const std::size_t cols = data.empty() ? 0 : data[0].size();
  ScalarMatrix m(data.size(), cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != cols) throw ValidationError(ViolationKind::Shape, where + " has ragged rows");
    m.set_row(i, data[i]);
  }
  return m;
}

ExtensionSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("expected a JSON object", "document");
  ExtensionSpec s;
  s.n = static_cast<int>(integer(member(doc, "n", ""), "n"));
  s.f = static_cast<int>(integer(member(doc, "f", ""), "f"));
  if (s.n < 1 || s.f < 1) throw ValidationError(ViolationKind::Shape, "n and f must be positive");
  const auto f = static_cast<std::size_t>(s.f);
  const auto size = static_cast<std::size_t>(2 * s.n);
  s.a = scalar_row(member(doc, "a", ""), "a");
  const json& xs = array(member(doc, "X", ""), "X");
  for (std::size_t al = 0; al < xs.size(); ++al) s.X.push_back(scalar_matrix(xs[al], "X[" + std::to_string(al) + "]"));
  if (doc.contains("rho")) {
    const json& rs = array(doc.at("rho"), "rho");
    for (std::size_t al = 0; al < rs.size(); ++al) s.rho.push_back(scalar_row(rs[al], "rho[" + std::to_string(al) + "]"));
  } else {
    s.rho.assign(f, Vec<Scalar>(size));
  }
  s.r = doc.contains("r") ? scalar_matrix(doc.at("r"), "r") : ScalarMatrix(f, f);
  return s;
}

}  // namespace

ExtensionSpec parse_spec_json(const std::string& text) { return spec_from_json(parse_json(text)); }

std::string spec_to_json(const ExtensionSpec& spec) {
  using ordered = nlohmann::ordered_json;
  auto row = [](const Vec<Scalar>& v) {
    ordered out = ordered::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
  };
  auto matrix = [&](const ScalarMatrix& m) {
    ordered out = ordered::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(row(m.row(i)));
    return out;
  };
  ordered doc;
  doc["n"] = spec.n;
  doc["f"] = spec.f;
  doc["a"] = row(spec.a);
  doc["X"] = ordered::array();
  for (const auto& x : spec.X) doc["X"].push_back(matrix(x));
  doc["rho"] = ordered::array();
  for (const auto& v : spec.rho) doc["rho"].push_back(row(v));
  doc["r"] = matrix(spec.r);
  return doc.dump(2) + "\n";
}

LoadedInput load_input(const std::string& text, std::size_t max_dim) {
  const json doc = parse_json(text);
  LoadedInput out;
  if (doc.is_object() && (doc.contains("X") || doc.contains("n"))) {
    ExtensionSpec spec = spec_from_json(doc);
    const auto dim = static_cast<std::size_t>(2 * spec.n + 1 + spec.f);
    if (dim > max_dim) throw DomainError("dimension " + std::to_string(dim) + " exceeds the limit " + std::to_string(max_dim));
    out.tensor = build_extension(spec);
    out.field = spec_field(spec);
    out.spec = std::move(spec);
    return out;
  }
  if (doc.is_object() && doc.contains("dim") && doc.at("dim").is_number_integer() &&
      doc.at("dim").get<long>() > static_cast<long>(max_dim)) {
    throw DomainError("dimension " + std::to_string(doc.at("dim").get<long>()) + " exceeds the limit " +
                      std::to_string(max_dim));
  }
  out.tensor = parse_algebra_json(text);
  out.field = tensor_field(out.tensor);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace heisenleib
