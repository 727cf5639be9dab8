#include "epw_cli/io.hpp"

#include <fstream>
#include <sstream>

#include "epw/error.hpp"

namespace epw::cli {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const json& j) {
  if (!j.is_number_integer()) throw SchemaError("expected an integer, got " + j.dump());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw SchemaError("integer out of range: " + j.dump());
  return j.get<std::int64_t>();
}

std::uint32_t residue(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

}  // namespace

json field_to_json(const Field& f) {
  json j;
  j["p"] = f.characteristic();
  j["k"] = f.degree();
  j["modulus"] = f.degree() == 1 ? std::vector<std::uint32_t>{} : f.modulus();
  return j;
}

Field field_from_json(const json& j) {
  const std::int64_t p = as_int(require(j, "p"));
  const std::int64_t k = j.contains("k") ? as_int(j.at("k")) : 1;
  if (p < 2 || p > (1ll << 31)) throw InvalidInput(std::to_string(p) + " is not a usable prime");
  if (k == 1) return Field::prime(static_cast<std::uint32_t>(p));
  std::vector<std::uint32_t> mod;
  for (const auto& c : require(j, "modulus")) mod.push_back(residue(as_int(c), static_cast<std::uint32_t>(p)));
  if (mod.size() != static_cast<std::size_t>(k + 1)) throw SchemaError("modulus length does not match k");
  return Field::with_modulus(static_cast<std::uint32_t>(p), mod);
}

json elem_to_json(const FieldElem& x) {
  if (x.field().degree() == 1) return x.coeff(0);
  json a = json::array();
  for (int i = 0; i < x.field().degree(); ++i) a.push_back(x.coeff(i));
  return a;
}

FieldElem elem_from_json(const Field& f, const json& j) {
  if (j.is_array()) {
    if (j.size() != static_cast<std::size_t>(f.degree())) throw SchemaError("field element has the wrong length");
    std::vector<std::uint32_t> c;
    for (const auto& x : j) c.push_back(residue(as_int(x), f.characteristic()));
    return f.from_coeffs(c);
  }
  return f.from_int(as_int(j));
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(elem_to_json(x));
  return a;
}

Vec vec_from_json(const Field& f, const json& j, std::size_t length) {
  if (!j.is_array() || j.size() != length)
    throw SchemaError("expected an array of " + std::to_string(length) + " entries, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(elem_from_json(f, x));
  return v;
}

json subspace_to_json(const Subspace& s) {
  json a = json::array();
  for (const auto& b : s.basis_vectors()) a.push_back(vec_to_json(b));
  return a;
}

json param_to_json(const Param& t) { return t.infinity ? json("inf") : elem_to_json(t.t); }

json unipoly_to_json(const UniPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(elem_to_json(c));
  return a;
}

json secancy_to_json(const SecancyPolynomial& s) {
  json j;
  j["identically_zero"] = s.identically_zero;
  if (!s.identically_zero) {
    j["affine"] = unipoly_to_json(s.affine);
    j["infinity_multiplicity"] = s.infinity_multiplicity;
    j["degree"] = s.degree();
    j["squarefree"] = s.squarefree();
    j["factor_degrees"] = s.factor_degrees_with_multiplicity();
  }
  return j;
}

json zline_to_json(const ZLine& z) {
  json j;
  j["v1"] = vec_to_json(z.v1);
  j["v2"] = vec_to_json(z.v2);
  j["alpha"] = vec_to_json(z.alpha.coords());
  return j;
}

ZLine zline_from_json(const Field& f, const json& j) {
  const Vec v1 = vec_from_json(f, require(j, "v1"), kDimW);
  const Vec v2 = vec_from_json(f, require(j, "v2"), kDimW);
  const Vec a = vec_from_json(f, require(j, "alpha"), grade_dim(2));
  return zline_validate(v1, v2, MultiVector(2, a));
}

json poly_to_json(const MultiPoly& p) {
  json j;
  j["vars"] = kVars;
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t;
    t["exp"] = std::vector<int>(e.begin(), e.end());
    t["c"] = elem_to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MultiPoly poly_from_json(const Field& f, const json& j) {
  if (as_int(require(j, "vars")) != kVars) throw SchemaError("polynomials must have 6 variables");
  MultiPoly p(f);
  for (const auto& t : require(j, "terms")) {
    const json& ej = require(t, "exp");
    if (!ej.is_array() || ej.size() != static_cast<std::size_t>(kVars)) throw SchemaError("exponent must have 6 entries");
    Exponent e{};
    for (std::size_t i = 0; i < static_cast<std::size_t>(kVars); ++i) {
      const std::int64_t x = as_int(ej[i]);
      if (x < 0 || x > 255) throw SchemaError("exponent out of range");
      e[i] = static_cast<std::uint8_t>(x);
    }
    p.add_term(e, elem_from_json(f, require(t, "c")));
  }
  return p;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = field_to_json(s.A.field());
  j["lagrangian"] = subspace_to_json(s.A.subspace());
  json zl = json::object();
  for (const auto& [name, z] : s.zlines) zl[name] = zline_to_json(z);
  j["zlines"] = std::move(zl);
  if (s.seed) j["seed"] = *s.seed;
  json prov;
  prov["constraint"] = s.A.provenance().constraint;
  json w = json::array();
  for (const auto& x : s.A.provenance().witnesses) w.push_back(vec_to_json(x));
  prov["witnesses"] = std::move(w);
  j["provenance"] = std::move(prov);
  return j;
}

Scenario scenario_from_json(const json& j) {
  try {
    if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
    if (as_int(require(j, "schema_version")) != kSchemaVersion)
      throw SchemaError("unrecognized schema version " + require(j, "schema_version").dump());
    const Field f = field_from_json(require(j, "field"));
    const json& rows = require(j, "lagrangian");
    if (!rows.is_array() || rows.size() != 10) throw SchemaError("lagrangian must have 10 rows");
    std::vector<Vec> basis;
    for (const auto& r : rows) basis.push_back(vec_from_json(f, r, 20));
    Provenance prov;
    Scenario s;
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw SchemaError("seed must be a non-negative integer");
      s.seed = j.at("seed").get<std::uint64_t>();
      prov.seed = s.seed;
    }
    if (j.contains("provenance")) {
      const json& p = j.at("provenance");
      if (p.contains("constraint")) prov.constraint = p.at("constraint").get<std::string>();
      if (p.contains("witnesses"))
        for (const auto& w : p.at("witnesses")) prov.witnesses.push_back(vec_from_json(f, w, 20));
    }
    const Subspace A = Subspace::span(f, 20, basis);
    if (!is_lagrangian(A)) throw SchemaError("lagrangian basis is not a Lagrangian subspace");
    s.A = Lagrangian(A, prov);
    if (j.contains("zlines"))
      for (const auto& [name, z] : j.at("zlines").items()) s.zlines.emplace(name, zline_from_json(f, z));
    return s;
  } catch (const InvalidInput& e) {
    throw SchemaError(std::string("invalid scenario: ") + e.what());
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed scenario: ") + e.what());
  }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

void save_scenario(const std::string& path, const Scenario& s) {
  write_text_file(path, canonical_dump(scenario_to_json(s)));
}

json json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("malformed JSON argument: ") + e.what());
    }
  }
  return read_json_file(text);
}

}  // namespace epw::cli
