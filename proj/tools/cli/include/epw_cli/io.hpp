#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "epw/incidence.hpp"
#include "epw/zlines.hpp"

namespace epw::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// File missing, unreadable or unwritable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File readable but not a valid document of the expected kind.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  Lagrangian A;
  std::map<std::string, ZLine> zlines;
  std::optional<std::uint64_t> seed;
};

// Field elements are residues for prime fields and coefficient arrays (low to
// high) otherwise.
json field_to_json(const Field& f);
Field field_from_json(const json& j);
json elem_to_json(const FieldElem& x);
FieldElem elem_from_json(const Field& f, const json& j);
json vec_to_json(const Vec& v);
Vec vec_from_json(const Field& f, const json& j, std::size_t length);
json subspace_to_json(const Subspace& s);
json param_to_json(const Param& t);
json unipoly_to_json(const UniPoly& p);
json secancy_to_json(const SecancyPolynomial& s);

json zline_to_json(const ZLine& z);
// Validates the line; InvalidInput propagates.
ZLine zline_from_json(const Field& f, const json& j);

json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Field& f, const json& j);

json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& s);

// Inline JSON when the text starts with '[' or '{', a file path otherwise.
json json_arg(const std::string& text);

}  // namespace epw::cli
