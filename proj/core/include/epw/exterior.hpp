#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "epw/linalg.hpp"

namespace epw {

inline constexpr int kDimW = 6;

// Number of coordinates of the grade-k part, C(6, k).
std::size_t grade_dim(int k);
// Bitmask (bit i = index i, 0-based) of the i-th k-subset in lexicographic order.
unsigned subset_mask(int k, std::size_t index);
std::size_t subset_index(unsigned mask);
// Sign of e_a ^ e_b relative to e_{a|b} for disjoint masks.
int merge_sign(unsigned a, unsigned b);

// Element of the grade-k part of the exterior algebra of W = F^6.
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(Field f, int grade);
  MultiVector(int grade, Vec coords);

  // e_{i1...ik} with 1-based indices in any order (sign of the sorting
  // permutation is applied). A repeated index gives zero.
  static MultiVector blade(Field f, std::initializer_list<int> indices);
  static MultiVector blade(Field f, const std::vector<int>& indices);
  static MultiVector vector(const Vec& w);

  Field field() const { return field_; }
  int grade() const { return grade_; }
  const Vec& coords() const { return c_; }
  FieldElem& operator[](std::size_t i) { return c_[i]; }
  const FieldElem& operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const { return epw::is_zero(c_); }

  MultiVector& operator+=(const MultiVector& o);
  MultiVector& operator-=(const MultiVector& o);
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(const FieldElem& s, const MultiVector& a);
  friend bool operator==(const MultiVector& a, const MultiVector& b) { return a.grade_ == b.grade_ && a.c_ == b.c_; }

  MultiVector embed(const Field& target) const;
  // "e123 + 2*e145" style, 1-based indices.
  std::string to_string() const;

 private:
  Field field_;
  int grade_ = 0;
  Vec c_;
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);
inline MultiVector wedge(const MultiVector& a, const MultiVector& b, const MultiVector& c) { return wedge(wedge(a, b), c); }
// Coefficient of e_123456 in a ^ b, both grade 3.
FieldElem omega(const MultiVector& a, const MultiVector& b);
// Same pairing on raw 20-coordinate vectors.
FieldElem omega(const Vec& a, const Vec& b);
// Coefficient of e_123456 in a grade-6 element.
FieldElem volume(const MultiVector& top);

// Covector H with H(w) = vol(g ^ w) for a grade-5 element g.
Vec five_form_covector(const MultiVector& g);
// Contraction by a covector: grade k -> grade k-1.
MultiVector contract(const Vec& H, const MultiVector& a);

// Matrix of the induced map on grade k for g acting on column vectors of W;
// columns are images of the basis blades.
Matrix wedge_power(const Matrix& g, int k);
MultiVector apply(const Matrix& g, const MultiVector& a);

enum class FamilyKind { F, Fdual, T };
std::string to_string(FamilyKind k);

// F_v = v ^ (grade 2).
Subspace family_F(const Vec& v);
// Grade 3 of ker H.
Subspace family_Fdual(const Vec& H);
// T_U = (grade 2 of U) ^ W.
Subspace family_T(const Subspace& U);
// Dispatch: datum is {v}, {H} or a basis of U.
Subspace family_subspace(FamilyKind kind, const std::vector<Vec>& datum);

Subspace span_trivectors(Field f, const std::vector<MultiVector>& xs);
bool is_isotropic(const Subspace& s);

enum class OrbitType { Zero, Decomposable, OmegaOpen, Generic };
std::string to_string(OrbitType t);

// {w : w ^ alpha = 0}.
Subspace wedge_kernel(const MultiVector& alpha);
OrbitType classify(const MultiVector& alpha);

// Some beta with v ^ beta = alpha, or nothing.
std::optional<MultiVector> divide(const Vec& v, const MultiVector& alpha);

struct PhiPair {
  Vec v;  // kernel line, normalized
  Vec H;  // covector of v ^ beta ^ beta, normalized
};

// Throws InvalidInput unless classify(alpha) == OmegaOpen.
PhiPair phi_pair(const MultiVector& alpha);

}  // namespace epw
