#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "jackhilb/fock.hpp"
#include "jackhilb/hilb.hpp"
#include "jackhilb/partition.hpp"
#include "jackhilb/rational.hpp"
#include "jackhilb/surface.hpp"
#include "jackhilb/symfunc.hpp"

namespace jackhilb::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

/// Malformed input. The message names the offending location: a byte
/// position for JSON syntax errors, a JSON path otherwise.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of a batch verification (heis-check).
struct CheckReport {
  std::string status;
  std::int64_t checked = 0;
  std::vector<std::string> failures;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

using Document =
    std::variant<SymPoly, EquivClass, HeisCombination, FockState, StructureTable, Rational, CheckReport>;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(path, std::string("missing field '") + name + "'");
  return *it;
}

inline void expect_fields(const Json& j, std::set<std::string> allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path, "unknown field '" + it.key() + "'");
}

inline int integer_field(const Json& j, const char* name, const std::string& path) {
  const Json& v = field(j, name, path);
  if (!v.is_number_integer()) fail(path + "/" + name, "expected an integer");
  return v.get<int>();
}

}  // namespace detail

// --- scalars and partitions ------------------------------------------------

inline Json rational_to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) detail::fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    detail::fail(path, e.what());
  }
}

inline Json partition_to_json(const Partition& p) {
  Json a = Json::array();
  for (int x : p.parts()) a.push_back(x);
  return a;
}

inline Partition partition_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) detail::fail(path, "expected a partition array");
  std::vector<int> parts;
  for (const Json& x : j) {
    if (!x.is_number_integer()) detail::fail(path, "partition parts must be integers");
    parts.push_back(x.get<int>());
  }
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument& e) {
    detail::fail(path, e.what());
  }
}

inline Json bipartition_to_json(const Bipartition& b) {
  return Json::array({partition_to_json(b.first), partition_to_json(b.second)});
}

inline Bipartition bipartition_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) detail::fail(path, "expected a pair of partitions");
  return {partition_from_json(j[0], path + "/0"), partition_from_json(j[1], path + "/1")};
}

/// Plane keys print as a partition, line-bundle keys as a pair.
inline Json key_to_json(const Bipartition& key, const SurfaceModel& model) {
  return model.is_plane() ? partition_to_json(key.first) : bipartition_to_json(key);
}

inline Bipartition key_from_json(const Json& j, const SurfaceModel& model, const std::string& path) {
  if (model.is_plane()) return {partition_from_json(j, path), {}};
  return bipartition_from_json(j, path);
}

inline std::string serialize(const Partition& p) { return partition_to_json(p).dump(); }
inline std::string serialize(const Rational& x) { return Json(to_string(x)).dump(); }

/// Parses bracketed partition text such as "[3,1,1]" or "[]".
inline Partition parse_partition(std::string_view text) {
  return partition_from_json(detail::parse_json(text), "partition");
}

/// Parses "[[2,1],[1]]".
inline Bipartition parse_bipartition(std::string_view text) {
  return bipartition_from_json(detail::parse_json(text), "bipartition");
}

// --- models and bases ------------------------------------------------------

inline Json model_to_json(const SurfaceModel& m) {
  Json j = Json::object();
  if (m.is_plane()) {
    j["alpha"] = m.alpha();
    j["beta"] = m.beta();
  } else {
    j["gamma"] = m.gamma();
  }
  return j;
}

inline SurfaceModel model_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) detail::fail(path, "expected a model object");
  try {
    if (j.contains("gamma")) {
      detail::expect_fields(j, {"gamma"}, path);
      return SurfaceModel::line_bundle(detail::integer_field(j, "gamma", path));
    }
    detail::expect_fields(j, {"alpha", "beta"}, path);
    return SurfaceModel::plane(detail::integer_field(j, "alpha", path),
                               detail::integer_field(j, "beta", path));
  } catch (const std::domain_error& e) {
    detail::fail(path, e.what());
  }
}

inline Json basis_to_json(const BasisLabel& b) {
  switch (b.kind) {
    case BasisLabel::Kind::Monomial: return "m";
    case BasisLabel::Kind::Power: return "p";
    case BasisLabel::Kind::PowerNormalized: return "pnorm";
    case BasisLabel::Kind::Jack: {
      Json j = Json::object();
      j["jack"] = to_string(b.param);
      return j;
    }
  }
  throw std::logic_error("unknown basis kind");
}

inline BasisLabel basis_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "m") return BasisLabel::monomial();
    if (s == "p") return BasisLabel::power();
    if (s == "pnorm") return BasisLabel::power_normalized();
    detail::fail(path, "unknown basis tag '" + s + "'");
  }
  if (j.is_object() && j.size() == 1 && j.contains("jack")) {
    const Rational r = rational_from_json(j["jack"], path + "/jack");
    if (r <= 0) detail::fail(path + "/jack", "Jack parameter must be positive");
    return BasisLabel::jack(r);
  }
  detail::fail(path, "unknown basis tag");
}

/// Parses "m", "p", "pnorm" or "jack:p/q" (command-line spelling).
inline BasisLabel parse_basis(std::string_view text) {
  if (text.starts_with("jack:")) {
    Json j = Json::object();
    j["jack"] = std::string(text.substr(5));
    return basis_from_json(j, "basis");
  }
  return basis_from_json(Json(std::string(text)), "basis");
}

// --- payloads --------------------------------------------------------------

inline Json to_json(const SymPoly& f) {
  Json coeffs = Json::object();
  for (const auto& [lambda, c] : f.terms()) coeffs[serialize(lambda)] = to_string(c);
  Json j = Json::object();
  j["degree"] = f.degree();
  j["basis"] = basis_to_json(f.basis());
  j["coeffs"] = std::move(coeffs);
  return j;
}

namespace detail {

/// Coefficient maps keyed by JSON text of a partition / pair.
template <class Add, class KeyParse>
void read_coeffs(const Json& coeffs, const std::string& path, KeyParse&& key_parse, Add&& add) {
  if (!coeffs.is_object()) fail(path, "expected an object of coefficients");
  std::set<std::string> seen;
  for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
    const std::string p = path + "/" + it.key();
    Json key_json;
    try {
      key_json = Json::parse(it.key());
    } catch (const nlohmann::json::parse_error&) {
      fail(p, "coefficient key is not JSON");
    }
    auto key = key_parse(key_json, p);
    if (!seen.insert(key_json.dump()).second) fail(p, "duplicate key");
    const Rational c = rational_from_json(it.value(), p);
    if (c == 0) fail(p, "zero coefficients are not stored");
    try {
      add(key, c);
    } catch (const std::domain_error& e) {
      fail(p, e.what());
    }
  }
}

}  // namespace detail

inline SymPoly sympoly_from_json(const Json& j, const std::string& path = "") {
  detail::expect_fields(j, {"degree", "basis", "coeffs"}, path);
  const int degree = detail::integer_field(j, "degree", path);
  if (degree < 0) detail::fail(path + "/degree", "negative degree");
  SymPoly f(degree, basis_from_json(detail::field(j, "basis", path), path + "/basis"));
  detail::read_coeffs(
      detail::field(j, "coeffs", path), path + "/coeffs",
      [](const Json& k, const std::string& p) { return partition_from_json(k, p); },
      [&f](const Partition& lambda, const Rational& c) { f.add(lambda, c); });
  return f;
}

inline Json to_json(const EquivClass& a) {
  Json coeffs = Json::object();
  for (const auto& [key, c] : a.terms()) coeffs[key_to_json(key, a.model()).dump()] = to_string(c);
  Json j = Json::object();
  j["n"] = a.n();
  j["model"] = model_to_json(a.model());
  j["basis"] = "fixedpoint";
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline Json to_json(const HeisCombination& h) {
  Json coeffs = Json::object();
  for (const auto& [key, c] : h.terms()) coeffs[bipartition_to_json(key).dump()] = to_string(c);
  Json j = Json::object();
  j["n"] = h.n();
  j["model"] = model_to_json(h.model());
  j["basis"] = h.basis() == HeisBasis::Q ? "Q" : "R";
  j["coeffs"] = std::move(coeffs);
  return j;
}

/// EquivClass-shaped JSON; basis "fixedpoint" yields an EquivClass, "Q"/"R" a
/// HeisCombination.
inline std::variant<EquivClass, HeisCombination> class_from_json(const Json& j,
                                                                 const std::string& path = "") {
  detail::expect_fields(j, {"n", "model", "basis", "coeffs"}, path);
  const int n = detail::integer_field(j, "n", path);
  if (n < 0) detail::fail(path + "/n", "negative degree");
  const SurfaceModel model = model_from_json(detail::field(j, "model", path), path + "/model");
  const Json& basis = detail::field(j, "basis", path);
  if (!basis.is_string()) detail::fail(path + "/basis", "expected a string");
  const std::string tag = basis.get<std::string>();
  const Json& coeffs = detail::field(j, "coeffs", path);
  auto keyparse = [&model](const Json& k, const std::string& p) { return key_from_json(k, model, p); };
  if (tag == "fixedpoint") {
    EquivClass a(model, n);
    detail::read_coeffs(coeffs, path + "/coeffs", keyparse,
                        [&a](const Bipartition& k, const Rational& c) { a.add(k, c); });
    return a;
  }
  if (tag == "Q" || tag == "R") {
    if (model.is_plane()) detail::fail(path + "/model", "Heisenberg bases need a line-bundle model");
    HeisCombination h(model, n, tag == "Q" ? HeisBasis::Q : HeisBasis::R);
    detail::read_coeffs(
        coeffs, path + "/coeffs",
        [](const Json& k, const std::string& p) { return bipartition_from_json(k, p); },
        [&h](const Bipartition& k, const Rational& c) { h.add(k, c); });
    return h;
  }
  detail::fail(path + "/basis", "unknown basis tag '" + tag + "'");
}

inline Json to_json(const FockState& s) {
  Json terms = Json::array();
  for (const auto& [key, c] : s.terms()) {
    Json t = Json::object();
    t["factor1"] = partition_to_json(key.first);
    if (!s.model().is_plane()) t["factor2"] = partition_to_json(key.second);
    t["coeff"] = to_string(c);
    terms.push_back(std::move(t));
  }
  Json j = Json::object();
  j["degree"] = s.degree();
  j["model"] = model_to_json(s.model());
  j["basis"] = "p";
  j["terms"] = std::move(terms);
  return j;
}

inline FockState fock_from_json(const Json& j, const std::string& path = "") {
  detail::expect_fields(j, {"degree", "model", "basis", "terms"}, path);
  const int degree = detail::integer_field(j, "degree", path);
  const SurfaceModel model = model_from_json(detail::field(j, "model", path), path + "/model");
  const Json& basis = detail::field(j, "basis", path);
  if (basis != "p") detail::fail(path + "/basis", "Fock states are stored in basis \"p\"");
  const Json& terms = detail::field(j, "terms", path);
  if (!terms.is_array()) detail::fail(path + "/terms", "expected an array");
  FockState s(model, degree);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = path + "/terms/" + std::to_string(i);
    const Json& t = terms[i];
    detail::expect_fields(t, {"factor1", "factor2", "coeff"}, p);
    Bipartition key{partition_from_json(detail::field(t, "factor1", p), p + "/factor1"), {}};
    if (t.contains("factor2")) {
      if (model.is_plane()) detail::fail(p, "plane states have no factor2");
      key.second = partition_from_json(t["factor2"], p + "/factor2");
    }
    const Rational c = rational_from_json(detail::field(t, "coeff", p), p + "/coeff");
    if (c == 0) detail::fail(p, "zero coefficients are not stored");
    if (!seen.insert(key.to_string()).second) detail::fail(p, "duplicate term");
    try {
      s.add(key, c);
    } catch (const std::domain_error& e) {
      detail::fail(p, e.what());
    }
  }
  return s;
}

inline std::string table_basis_name(TableBasis b) {
  return b == TableBasis::FixedPoint ? "fixedpoint" : "Q-graded";
}

inline TableBasis table_basis_from_name(const std::string& s, const std::string& path) {
  if (s == "fixedpoint") return TableBasis::FixedPoint;
  if (s == "Q-graded") return TableBasis::QGraded;
  detail::fail(path, "unknown table basis '" + s + "'");
}

inline Json to_json(const StructureTable& t) {
  auto key = [&t](const Bipartition& b) {
    return t.basis == TableBasis::QGraded ? bipartition_to_json(b) : key_to_json(b, t.model);
  };
  Json rows = Json::array();
  for (const StructureRow& r : t.rows) {
    Json row = Json::object();
    row["left"] = key(r.left);
    row["right"] = key(r.right);
    row["result"] = r.result ? key(*r.result) : Json(nullptr);
    row["coeff"] = to_string(r.coeff);
    rows.push_back(std::move(row));
  }
  Json j = Json::object();
  j["n"] = t.n;
  j["model"] = model_to_json(t.model);
  j["basis"] = table_basis_name(t.basis);
  j["rows"] = std::move(rows);
  return j;
}

inline StructureTable table_from_json(const Json& j, const std::string& path = "") {
  detail::expect_fields(j, {"n", "model", "basis", "rows"}, path);
  StructureTable t{model_from_json(detail::field(j, "model", path), path + "/model"),
                   detail::integer_field(j, "n", path), TableBasis::FixedPoint, {}};
  const Json& basis = detail::field(j, "basis", path);
  if (!basis.is_string()) detail::fail(path + "/basis", "expected a string");
  t.basis = table_basis_from_name(basis.get<std::string>(), path + "/basis");
  auto key = [&t](const Json& k, const std::string& p) {
    return t.basis == TableBasis::QGraded ? bipartition_from_json(k, p) : key_from_json(k, t.model, p);
  };
  const Json& rows = detail::field(j, "rows", path);
  if (!rows.is_array()) detail::fail(path + "/rows", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = path + "/rows/" + std::to_string(i);
    const Json& r = rows[i];
    detail::expect_fields(r, {"left", "right", "result", "coeff"}, p);
    StructureRow row;
    row.left = key(detail::field(r, "left", p), p + "/left");
    row.right = key(detail::field(r, "right", p), p + "/right");
    const Json& res = detail::field(r, "result", p);
    if (!res.is_null()) row.result = key(res, p + "/result");
    row.coeff = rational_from_json(detail::field(r, "coeff", p), p + "/coeff");
    if (row.result.has_value() == (row.coeff == 0))
      detail::fail(p, "a null result must carry coefficient 0, and only it");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Json to_json(const CheckReport& r) {
  Json j = Json::object();
  j["status"] = r.status;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  return j;
}

inline CheckReport report_from_json(const Json& j, const std::string& path = "") {
  detail::expect_fields(j, {"status", "checked", "failures"}, path);
  CheckReport r;
  const Json& status = detail::field(j, "status", path);
  const Json& checked = detail::field(j, "checked", path);
  const Json& failures = detail::field(j, "failures", path);
  if (!status.is_string()) detail::fail(path + "/status", "expected a string");
  if (!checked.is_number_integer()) detail::fail(path + "/checked", "expected an integer");
  if (!failures.is_array()) detail::fail(path + "/failures", "expected an array");
  r.status = status.get<std::string>();
  r.checked = checked.get<std::int64_t>();
  for (const Json& f : failures) {
    if (!f.is_string()) detail::fail(path + "/failures", "expected strings");
    r.failures.push_back(f.get<std::string>());
  }
  return r;
}

// --- documents -------------------------------------------------------------

inline std::string document_type(const Document& d) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SymPoly>) return "sympoly";
        else if constexpr (std::is_same_v<T, EquivClass>) return "equivclass";
        else if constexpr (std::is_same_v<T, HeisCombination>) return "heis";
        else if constexpr (std::is_same_v<T, FockState>) return "fock";
        else if constexpr (std::is_same_v<T, StructureTable>) return "table";
        else if constexpr (std::is_same_v<T, Rational>) return "scalar";
        else return "report";
      },
      d);
}

inline Json document_to_json(const Document& d) {
  Json j = Json::object();
  j["schema_version"] = std::string(kSchemaVersion);
  j["type"] = document_type(d);
  j["data"] = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) return rational_to_json(x);
        else return to_json(x);
      },
      d);
  return j;
}

/// Canonical text: two-space indented JSON followed by a single '\n'.
inline std::string serialize(const Document& d) { return document_to_json(d).dump(2) + "\n"; }

inline Document parse_document(std::string_view text) {
  const Json j = detail::parse_json(text);
  detail::expect_fields(j, {"schema_version", "type", "data"}, "");
  const Json& version = detail::field(j, "schema_version", "");
  if (version != std::string(kSchemaVersion))
    detail::fail("/schema_version", "unsupported schema version " + version.dump());
  const Json& type = detail::field(j, "type", "");
  const Json& data = detail::field(j, "data", "");
  if (!type.is_string()) detail::fail("/type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "sympoly") return sympoly_from_json(data, "/data");
  if (t == "equivclass" || t == "heis") {
    auto v = class_from_json(data, "/data");
    const bool fixed = std::holds_alternative<EquivClass>(v);
    if (fixed != (t == "equivclass")) detail::fail("/type", "type does not match data basis");
    if (fixed) return std::get<EquivClass>(std::move(v));
    return std::get<HeisCombination>(std::move(v));
  }
  if (t == "fock") return fock_from_json(data, "/data");
  if (t == "table") return table_from_json(data, "/data");
  if (t == "scalar") return rational_from_json(data, "/data");
  if (t == "report") return report_from_json(data, "/data");
  detail::fail("/type", "unknown document type '" + t + "'");
}

// --- CSV tables ------------------------------------------------------------

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line, const std::string& where) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) fail(where, "unterminated quoted field");
  return out;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "left,right,result,coefficient";

/// Flat table: one metadata comment line, the header, then one row per term.
/// Keys are JSON text; an empty result field means the product is zero.
inline std::string serialize_csv(const StructureTable& t) {
  const Json meta = [&] {
    Json m = Json::object();
    m["schema_version"] = std::string(kSchemaVersion);
    m["n"] = t.n;
    m["model"] = model_to_json(t.model);
    m["basis"] = table_basis_name(t.basis);
    return m;
  }();
  const Json body = to_json(t);
  std::string out = "# " + meta.dump() + "\n" + std::string(kCsvHeader) + "\n";
  for (const Json& r : body["rows"]) {
    out += detail::csv_field(r["left"].dump()) + ",";
    out += detail::csv_field(r["right"].dump()) + ",";
    out += (r["result"].is_null() ? std::string() : detail::csv_field(r["result"].dump())) + ",";
    out += r["coeff"].get<std::string>() + "\n";
  }
  return out;
}

inline StructureTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("# "))
    detail::fail("line 1", "missing metadata comment");
  const Json meta = detail::parse_json(std::string_view(line).substr(2));
  if (meta.value("schema_version", std::string()) != kSchemaVersion)
    detail::fail("line 1", "unsupported schema version");
  if (!std::getline(in, line) || line != kCsvHeader) detail::fail("line 2", "bad CSV header");
  Json j = Json::object();
  j["n"] = detail::field(meta, "n", "line 1");
  j["model"] = detail::field(meta, "model", "line 1");
  j["basis"] = detail::field(meta, "basis", "line 1");
  j["rows"] = Json::array();
  for (int lineno = 3; std::getline(in, line); ++lineno) {
    const std::string where = "line " + std::to_string(lineno);
    const auto f = detail::csv_split(line, where);
    if (f.size() != 4) detail::fail(where, "expected 4 fields");
    Json row = Json::object();
    row["left"] = detail::parse_json(f[0]);
    row["right"] = detail::parse_json(f[1]);
    row["result"] = f[2].empty() ? Json(nullptr) : detail::parse_json(f[2]);
    row["coeff"] = f[3];
    j["rows"].push_back(std::move(row));
  }
  return table_from_json(j, "csv");
}

}  // namespace jackhilb::io
