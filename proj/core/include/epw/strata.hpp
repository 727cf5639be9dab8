#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epw/lagrangian.hpp"
#include "epw/multipoly.hpp"
#include "epw/unipoly.hpp"

namespace epw {

// A point of P^1: an affine parameter or infinity.
struct Param {
  bool infinity = false;
  FieldElem t;

  static Param at(const FieldElem& x) { return {false, x}; }
  static Param inf() { return {true, {}}; }
  std::string to_string() const { return infinity ? "inf" : t.to_string(); }
  friend bool operator==(const Param& a, const Param& b) {
    return a.infinity == b.infinity && (a.infinity || a.t == b.t);
  }
};

// Line in G(3,W) of 3-spaces U with V_K in U in P_K.
class GLine {
 public:
  GLine() = default;
  // Throws InvalidInput unless dim V = 2, dim P = 4 and V in P.
  GLine(Subspace V, Subspace P);

  const Subspace& V() const { return V_; }
  const Subspace& P() const { return P_; }
  // U(t) = <x, y, p0 + t p1>, U(inf) = <x, y, p1>.
  const Vec& x() const { return x_; }
  const Vec& y() const { return y_; }
  const Vec& p0() const { return p0_; }
  const Vec& p1() const { return p1_; }
  std::vector<Vec> basis_at(const Param& t) const;
  Subspace U_at(const Param& t) const;
  GLine embed(const Field& target) const;
  // Same line with p0 and p1 exchanged (parameter t -> 1/t).
  static GLine swapped_copy(const GLine& l);

 private:
  Subspace V_, P_;
  Vec x_, y_, p0_, p1_;
};

// Pencil of family data: points d0 + t d1 of P(W) (F), of P(W*) (Fdual),
// or a GLine (T).
struct Pencil {
  FamilyKind kind = FamilyKind::F;
  Vec d0, d1;
  GLine line;

  static Pencil F(Vec a, Vec b);
  static Pencil Fdual(Vec a, Vec b);
  static Pencil T(GLine l);

  Field field() const;
  std::vector<Vec> datum_at(const Param& t) const;
  Pencil embed(const Field& target) const;
};

// dim (A meet family fiber).
std::size_t stratum(const Lagrangian& A, FamilyKind kind, const std::vector<Vec>& datum);
std::size_t stratum(const Subspace& A, FamilyKind kind, const std::vector<Vec>& datum);

// Rows a_i of A against spanning vectors of the fiber over t: the fiber
// meets A in dimension 10 - rank(P0 + t P1).
struct PairingPencil {
  Matrix P0, P1;
  Matrix Pinf;  // fiber over infinity
  Matrix at(const Param& t) const;
  std::size_t stratum_at(const Param& t) const;
};
PairingPencil pairing_pencil(const Subspace& A, const Pencil& pencil);

// Root scheme of a pencil against a deeper stratum, as a binary form split
// into its affine part and a root at infinity.
struct SecancyPolynomial {
  bool identically_zero = false;
  UniPoly affine;  // monic
  int infinity_multiplicity = 0;

  int degree() const;
  bool squarefree() const;
  // Degrees of irreducible factors of the radical with multiplicity ignored;
  // infinity counts as a degree-1 factor.
  std::vector<int> factor_degrees() const;
  // Degrees of all irreducible factors counted with multiplicity.
  std::vector<int> factor_degrees_with_multiplicity() const;
  std::vector<Param> base_roots() const;
};

enum class ScanMode { Auto, Exhaustive, Fast };

struct ScanOptions {
  std::size_t minors = 6;
  ScanMode mode = ScanMode::Auto;
  int retries = 4;
  std::uint64_t seed = 0x5ca9;
  std::size_t jobs = 1;
};

struct LineScan {
  FamilyKind kind = FamilyKind::F;
  std::size_t target = 1;
  bool exhaustive = false;
  // Exhaustive mode: stratum at every element (by index) then at infinity.
  std::vector<std::size_t> strata;
  std::size_t min_stratum = 0;
  std::size_t max_stratum = 0;
  // Parameters with stratum >= target (every parameter if the secancy
  // polynomial vanishes identically and the scan is not exhaustive: empty).
  std::vector<Param> hits;
  SecancyPolynomial secancy;
  int redraws = 0;
};

// Throws InvalidInput on a degenerate pencil and Degenerate when the
// secancy polynomial stays inconsistent with the rank oracle.
LineScan line_scan(const Lagrangian& A, const Pencil& pencil, std::size_t target, const ScanOptions& opts = {});

// Random pencils of each kind.
Pencil random_pencil(Field f, FamilyKind kind, Rng& rng);
GLine random_gline(Field f, Rng& rng);

struct SamplePoint {
  Vec v;          // normalized
  std::size_t k;  // stratum in family F
};

// One point of X_A; prefers stratum exactly 1.
SamplePoint sample_on_X(const Lagrangian& A, std::uint64_t seed, std::size_t pencil_budget = 200);
// `count` points of X_A (all roots of each random pencil are used), in a
// deterministic order.
std::vector<SamplePoint> sample_many_on_X(const Lagrangian& A, std::uint64_t seed, std::size_t count,
                                          std::size_t jobs = 1);

struct SexticOptions {
  std::size_t margin = kDefaultInterpolationMargin;
  std::size_t validation = 1000;
  std::uint64_t seed = 0x5e71c;
  std::size_t jobs = 1;
};

struct SexticResult {
  MultiPoly f;
  std::size_t rows = 0;
  std::size_t nullity = 0;
  std::size_t validated = 0;
  std::size_t validation_failures = 0;
};

SexticResult sextic_interpolate(const Lagrangian& A, const SexticOptions& opts = {});

struct TangentPlane {
  Subspace plane;  // 3-dimensional subspace of W
  std::size_t hessian_rank = 0;
  bool methods_agree = false;
  bool contains_point = false;
};

// f and A may be over a subfield of p's field; both are embedded.
TangentPlane tangent_plane_D2(const Lagrangian& A, const MultiPoly& f, const Vec& p);

// Pairing-method plane: w with vol(w ^ g_i ^ p ^ g_j) = 0 where p ^ g_i span
// F_p meet A.
Subspace tangent_plane_pairing(const Lagrangian& A, const Vec& p);

struct GenericityReport {
  std::size_t trials = 0;
  std::size_t F_hits = 0;      // lines with a stratum >= 3 point
  std::size_t Fdual_hits = 0;  // lines with a stratum >= 3 point
  std::size_t T_hits = 0;      // lines with a stratum >= 4 point
  std::size_t points_classified = 0;
  std::size_t decomposable_hits = 0;
  std::size_t omega_open_hits = 0;
  bool generic() const { return F_hits == 0 && Fdual_hits == 0 && T_hits == 0 && decomposable_hits == 0; }
  std::string verdict() const { return generic() ? "probabilistically generic" : "not generic"; }
};

GenericityReport genericity_probe(const Lagrangian& A, std::size_t trials, std::uint64_t seed = 0x9e7e,
                                  std::size_t jobs = 1);

Lagrangian embed(const Lagrangian& A, const Field& target);

}  // namespace epw
