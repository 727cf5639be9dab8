#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epw/strata.hpp"

namespace epw {

// Line l = {[(l1 v1 + l2 v2) ^ alpha]} in Omega, with eta_i = v_i ^ alpha.
struct ZLine {
  Vec v1, v2;
  MultiVector alpha;  // grade 2, of maximal rank after normalization
  int alpha_shift = 0;  // alpha was replaced by alpha + shift * v1 ^ v2
  MultiVector eta1, eta2;
  Vec H1, H2;  // phi_2 images
  Subspace V;  // <v1, v2>
  Subspace P;  // ker H1 meet ker H2
  FieldElem omega12;
  bool isotropic = false;

  Field field() const { return v1.at(0).field(); }
  Subspace span() const;  // <eta1, eta2> in the 3-forms
  GLine L() const { return GLine(V, P); }
  ZLine embed(const Field& target) const;
};

// Throws InvalidInput naming the violated invariant.
ZLine zline_validate(const Vec& v1, const Vec& v2, const MultiVector& alpha);

// Random Lagrangian containing the z-line. Throws InvalidInput if the line is
// not isotropic or the field differs.
Lagrangian lagrangian_through(const ZLine& z, Field f, std::uint64_t seed);

struct SubBattery {
  std::string name;
  FamilyKind kind = FamilyKind::F;
  std::size_t base = 1;  // every point should have stratum >= base
  bool exhaustive = false;
  std::size_t min_stratum = 0;
  bool all_on_locus = false;
  SecancyPolynomial secancy;  // target base + 1
  int degree = 0;
  bool squarefree = false;
  std::vector<int> factor_degrees;
  bool pass() const { return all_on_locus && degree == 4 && squarefree; }
};

struct PartialsCheck {
  bool ran = false;
  bool identically_zero = false;
  UniPoly gcd_affine;
  int infinity_multiplicity = 0;
  int degree = 0;
  bool roots_match = false;  // same root set as battery (i)
  bool equal = false;        // same binary form as battery (i)
  bool pass() const { return ran && degree == 4 && roots_match; }
};

struct BatteryReport {
  SubBattery pencil_W, pencil_Wdual, line_G;
  PartialsCheck partials;
  bool pass() const {
    return pencil_W.pass() && pencil_Wdual.pass() && line_G.pass() && (!partials.ran || partials.pass());
  }
};

struct BatteryOptions {
  ScanOptions scan;
  std::optional<MultiPoly> sextic;  // enables the quintic-partials check
};

// Throws InvalidInput unless both eta_i lie in A.
BatteryReport four_secant_battery(const ZLine& z, const Lagrangian& A, const BatteryOptions& opts = {});

// gcd of the six partials of f restricted to the pencil a + t b, as an
// affine part and a multiplicity at infinity (binary forms of degree deg f - 1).
PartialsCheck partials_on_pencil(const MultiPoly& f, const Vec& a, const Vec& b);

struct RKReduction {
  Subspace R;
  bool isotropic = false;
  bool equals_intersection = false;  // R = T_U(0) meet T_U(1) meet T_U(inf)
  ReducedSpace reduced;
};

// R_K = (grade 2 of V_K) ^ W + (grade 3 of P_K). Throws Degenerate unless
// dim R_K = 6.
RKReduction rk_reduce(const GLine& K);

struct ReductionMismatch {
  Param t;
  std::size_t lhs = 0, rhs = 0;
};

struct ReductionReport {
  std::size_t c = 0;  // dim (A meet R_K)
  std::size_t reduced_A_dim = 0;
  bool exhaustive = false;
  std::size_t checked = 0;
  bool reduced_T_lagrangian = true;  // every reduce(T_U) is 4-dim and isotropic
  std::vector<ReductionMismatch> mismatches;
  bool pass() const { return mismatches.empty() && reduced_T_lagrangian; }
};

struct ReductionOptions {
  std::size_t samples = 256;  // parameters checked when the field is too large to scan
  std::uint64_t seed = 0x4ed;
  std::size_t jobs = 1;
};

ReductionReport reduction_identity_check(const Lagrangian& A, const GLine& K, const ReductionOptions& opts = {});

// Rank of the 3k x 10 matrix of quadric monomials at a, b, a + b for each of
// k lines <a, b> of a 4-dimensional space.
std::size_t quadric_rank_of_lines(const std::vector<std::pair<Vec, Vec>>& lines);

struct TangentQuadricReport {
  int extension_degree = 1;
  std::vector<int> factor_degrees;
  std::vector<Vec> points;  // secant points over the extension
  std::vector<std::size_t> hessian_ranks;
  std::vector<std::size_t> image_dims;
  std::size_t rank = 0;
  bool pass() const { return rank == 10; }
};

// Throws Degenerate when battery (i) does not give four simple points or a
// tangent plane contains the projection center.
TangentQuadricReport tangent_quadric_test(const ZLine& z, const Lagrangian& A, const MultiPoly& f,
                                          const ScanOptions& scan = {});

}  // namespace epw
