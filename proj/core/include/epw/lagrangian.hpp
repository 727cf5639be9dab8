#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epw/exterior.hpp"

namespace epw {

// How a Lagrangian came to be; carried along for reports and scenario files.
struct Provenance {
  std::optional<std::uint64_t> seed;
  std::string constraint = "none";
  // Vectors the construction guarantees to lie in A (constraint generators,
  // the decomposable witness).
  std::vector<Vec> witnesses;
};

// A 10-dimensional omega-isotropic subspace of the 3-forms.
class Lagrangian {
 public:
  Lagrangian() = default;
  // Throws InvalidInput unless s is Lagrangian.
  explicit Lagrangian(Subspace s, Provenance prov = {});

  const Subspace& subspace() const { return s_; }
  Field field() const { return s_.field(); }
  const Provenance& provenance() const { return prov_; }
  bool contains(const Vec& x) const { return s_.contains(x); }
  bool contains(const MultiVector& x) const { return s_.contains(x.coords()); }

  friend bool operator==(const Lagrangian& a, const Lagrangian& b) { return a.s_ == b.s_; }

 private:
  Subspace s_;
  Provenance prov_;
};

// Throws InvalidInput if the ambient dimension is not 20.
bool is_lagrangian(const Subspace& s);

// Reference splitting: basis a_i of T<e1,e2,e3> (triples meeting {1,2,3} at
// least twice, lex order) and the dual basis a'_j of T<e4,e5,e6> with
// omega(a_i, a'_j) = delta_ij.
std::vector<Vec> reference_basis(Field f);
std::vector<Vec> reference_dual_basis(Field f);

// Span of a_i + sum_j S_ji a'_j. Throws InvalidInput if S is not symmetric.
Subspace lagrangian_from_graph(const Matrix& S);

struct Constraint {
  enum class Kind { None, Contains, ContainsDecomposable };
  Kind kind = Kind::None;
  Subspace subspace;  // for Contains

  static Constraint none() { return {}; }
  static Constraint contains(Subspace r) { return {Kind::Contains, std::move(r)}; }
  static Constraint contains_decomposable() { return {Kind::ContainsDecomposable, {}}; }
};

// Deterministic in (field, seed, constraint).
Lagrangian random_lagrangian(Field f, std::uint64_t seed, const Constraint& c = Constraint::none());

// Random element of GL(W).
Matrix random_invertible(Field f, std::size_t n, Rng& rng);

// R^perp / R for an isotropic R, with coordinates taken in a fixed
// complement C of R inside R^perp.
class ReducedSpace {
 public:
  ReducedSpace() = default;
  explicit ReducedSpace(const Subspace& R);

  const Subspace& R() const { return R_; }
  const Subspace& R_perp() const { return perp_; }
  const std::vector<Vec>& complement() const { return C_; }
  std::size_t quotient_dim() const { return C_.size(); }
  // gram(i, j) = omega(c_i, c_j)
  const Matrix& gram() const { return gram_; }

  FieldElem form(const Vec& x, const Vec& y) const;
  // Quotient coordinates of x in R^perp; throws InvalidInput otherwise.
  Vec project(const Vec& x) const;
  Vec lift(const Vec& q) const;
  // ((S meet R^perp) + R) / R
  Subspace reduce(const Subspace& S) const;
  bool is_isotropic(const Subspace& q) const;

 private:
  Field field_;
  Subspace R_;
  Subspace perp_;
  std::vector<Vec> C_;
  Matrix gram_;
  CoordinateSolver solver_;  // over R basis followed by C
};

// Throws InvalidInput if R is not isotropic or has dimension > 9.
ReducedSpace symplectic_reduce(const Subspace& R);

}  // namespace epw
