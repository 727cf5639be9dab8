#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "epw/strata.hpp"

namespace epw {

// Chart T_U = (3x3 matrices) + scalar. With a basis (u1,u2,u3) of U and a
// complement (w4,w5,w6), alpha = sum_ij M_ij u_(i) ^ w_j + c u1^u2^u3 where
// u_(1) = u2^u3, u_(2) = u3^u1, u_(3) = u1^u2.
class CubeModel {
 public:
  CubeModel() = default;
  // The complement defaults to the first standard basis vectors that are
  // independent of U.
  explicit CubeModel(const Subspace& U, std::optional<std::vector<Vec>> complement = std::nullopt);

  const Subspace& U() const { return U_; }
  const std::vector<Vec>& u() const { return u_; }
  const std::vector<Vec>& w() const { return w_; }

  struct Chart {
    Matrix M;
    FieldElem c;
  };
  // Throws InvalidInput if alpha is not in T_U.
  Chart chart(const MultiVector& alpha) const;
  MultiVector from_chart(const Chart& ch) const;

 private:
  Subspace U_;
  std::vector<Vec> u_, w_;
  std::vector<MultiVector> basis_;  // M_00..M_22 then the scalar direction
  CoordinateSolver solver_;
};

// det M(alpha); zero exactly on the cubic cone R_U.
FieldElem ru_det(const CubeModel& model, const MultiVector& alpha);

// Basis (eta0, eta1) of A meet T_U; throws Degenerate unless the stratum is 2.
std::pair<MultiVector, MultiVector> l_UA(const Lagrangian& A, const Subspace& U);

struct FiberPoint {
  Param t;            // position on l_UA, in the extension field
  int field_degree;   // degree of the irreducible factor it comes from
  MultiVector alpha;  // over the extension field
  OrbitType type = OrbitType::Zero;
  Vec v, H;              // phi pair when OmegaOpen
  bool v_on_X = false;   // stratum(F, v) >= 1
  bool H_on_Xd = false;  // stratum(Fdual, H) >= 1
};

struct Pi1Fiber {
  MultiVector eta0, eta1;
  UniPoly cubic;  // t -> det M(eta0 + t eta1), affine part
  int infinity_multiplicity = 0;
  int degree = 0;
  std::vector<int> factor_degrees;  // of the radical, infinity counted as 1
  bool squarefree = false;
  Field extension;  // field holding all listed points
  std::vector<FiberPoint> points;
};

// Throws Degenerate if the stratum is not 2 or the cubic vanishes identically.
Pi1Fiber pi1_fiber(const Lagrangian& A, const Subspace& U);

// The point of P(A) meet P(F_v), normalized; throws Degenerate unless the
// F-stratum of v is 1.
MultiVector p_of_v(const Lagrangian& A, const Vec& v);

// Q_p as a hyperplane section of G(2, V/v), V = V_{v,alpha}.
class QpModel {
 public:
  QpModel() = default;
  // Throws InvalidInput unless p is OmegaOpen.
  explicit QpModel(const MultiVector& p);

  const MultiVector& p() const { return p_; }
  const Vec& v() const { return v_; }
  const Vec& H() const { return H_; }
  const Subspace& V() const { return V_; }
  // Complement q_1..q_4 of v in V.
  const std::vector<Vec>& q() const { return q_; }
  // Coefficients of the Plucker form on q_i ^ q_j, lex pairs (6 entries):
  // L(a ^ b) = vol(beta ^ v ^ a ^ b ^ w0), w0 the fixed vector outside V.
  const Vec& plucker_form() const { return form_; }

  // Plucker coordinates of <a, b> for a, b given in q-coordinates.
  static Vec plucker(const Vec& a, const Vec& b);
  FieldElem form_at(const Vec& plucker_coords) const;
  // v in U, U in V, dim U = 3, and the Plucker form vanishes.
  bool contains(const Subspace& U) const;
  // <v, a, b> with a, b in q-coordinates.
  Subspace U_from(const Vec& a, const Vec& b) const;
  Vec lift(const Vec& qcoords) const;
  // vol(beta ^ v ^ a ^ b ^ w0) for a, b in V and a fixed w0 outside V.
  FieldElem form_on(const Vec& a, const Vec& b) const;

 private:
  MultiVector p_, beta_;
  Vec v_, H_, w0_;
  Subspace V_;
  std::vector<Vec> q_;
  Vec form_;
};

QpModel qp_model(const MultiVector& p);

struct FiberLine {
  GLine line;
  SecancyPolynomial secancy;
  std::vector<Param> hits;
};

struct FiberU {
  Subspace U;
  std::size_t stratum = 0;
  bool contains_v = false;
  bool p_in_T = false;
  bool on_Qp = false;
  bool roundtrip_checked = false;  // only for stratum exactly 2
  bool roundtrip = false;          // p is among the pi1 fiber points of U
};

struct Psi1Report {
  MultiVector p;
  std::vector<FiberLine> lines;
  std::vector<FiberU> fiber;
};

struct Psi1Options {
  std::size_t lines = 20;
  std::uint64_t seed = 0xf1be;
  ScanMode mode = ScanMode::Auto;
  std::size_t jobs = 1;
  std::size_t max_roundtrips = 64;
};

// Lines K_a = (<v, a>, v + Pi_a) of Q_p, Pi_a = {b : L(a ^ b) = 0}, scanned
// in family T for stratum >= 2.
Psi1Report psi1_fiber_scan(const Lagrangian& A, const Vec& v, const Psi1Options& opts = {});

}  // namespace epw
