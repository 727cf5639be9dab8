#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "epw/lattice.hpp"
#include "epw_cli/report.hpp"

namespace epw::cli {

struct GenOptions {
  std::uint32_t prime = 107;
  int ext = 1;
  std::uint64_t seed = 1;
  std::optional<json> zline;  // z-line document to contain
  bool contains_decomposable = false;
};

// Throws InvalidInput on a bad prime or a non-isotropic z-line.
Scenario cmd_gen(const GenOptions& opts);

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t trials = 64;
};

Report verify_genericity(const Scenario& s, const VerifyOptions& o);
// Writes the interpolated polynomial to *out when it succeeds.
Report verify_sextic(const Scenario& s, const VerifyOptions& o, std::size_t validation, MultiPoly* out = nullptr);
// Samples a point of Y_A through a psi_1 fiber when U is not given.
Report verify_fiber3(const Scenario& s, const std::optional<Subspace>& U, const VerifyOptions& o);
// Samples a smooth point of X_A when v is not given; o.trials is the line count.
Report verify_surface_fiber(const Scenario& s, const std::optional<Vec>& v, const VerifyOptions& o);
Report verify_zline_battery(const Scenario& s, const ZLine& z, const std::optional<MultiPoly>& sextic,
                            const VerifyOptions& o, bool with_partials = true);
Report verify_tangent_quadric(const Scenario& s, const ZLine& z, const std::optional<MultiPoly>& sextic,
                              const VerifyOptions& o);
Report verify_reduction_identity(const Scenario& s, const GLine& K, const VerifyOptions& o);
Report verify_lattice_eval(const std::string& lattice, const std::string& vec);
Report verify_lattice_mukai();
// Both appendix scripts on a fresh Lagrangian through the standard z-line.
Report verify_reproduce_appendix(std::uint32_t prime, const VerifyOptions& o, std::size_t validation = 1000);

// The z-line (e1, e2, e15 + e26 + e34).
ZLine standard_zline(const Field& f);
// The four lines [s : t : l s : l t], l = 1..4, on the quadric x0 x3 = x1 x2.
std::size_t negative_control_rank(const Field& f);

// Parsers for command arguments; throw InvalidInput.
Subspace parse_subspace(const Field& f, const json& j, std::size_t dim);
GLine parse_gline(const Field& f, const json& j);
// A name stored in the scenario, else a file or inline JSON document.
ZLine resolve_zline(const Scenario& s, const std::string& arg);

}  // namespace epw::cli
