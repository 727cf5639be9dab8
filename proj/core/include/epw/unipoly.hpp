#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epw/field.hpp"

namespace epw {

// Dense univariate polynomial over a finite field, coefficients low to high.
// No trailing zeros are stored; the zero polynomial has degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Field f) : field_(f) {}
  UniPoly(Field f, std::vector<FieldElem> coeffs);

  static UniPoly constant(const FieldElem& c);
  static UniPoly variable(Field f);
  // c * t^deg
  static UniPoly monomial(const FieldElem& c, int deg);
  // prod (t - r) over the given roots
  static UniPoly from_roots(Field f, const std::vector<FieldElem>& roots);

  Field field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem coeff(int i) const;
  FieldElem leading() const;

  FieldElem eval(const FieldElem& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  // t^n f(1/t) with n = degree(); drops the root at zero into a root at infinity.
  UniPoly reversed(int n) const;
  // Multiplicity of 0 as a root (f != 0).
  int zero_order() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const FieldElem& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  // Quotient and remainder; throws InvalidInput on division by zero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }

  // this^e mod m
  UniPoly powmod(std::uint64_t e, const UniPoly& m) const;

  bool is_irreducible() const;
  std::string to_string() const;

 private:
  void trim();
  Field field_;
  std::vector<FieldElem> c_;
};

// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

// Product of the distinct monic irreducible factors (correct also when a
// multiplicity is divisible by the characteristic).
UniPoly radical(const UniPoly& f);

// Roots lying in the coefficient field, sorted by FieldElem::index().
std::vector<FieldElem> roots_by_scan(const UniPoly& f);
std::vector<FieldElem> roots_by_gcd(const UniPoly& f);
// Scan when the field has at most 2^16 elements, gcd/equal-degree splitting otherwise.
std::vector<FieldElem> roots(const UniPoly& f);

// Degrees of the irreducible factors of a squarefree polynomial, ascending,
// computed by distinct-degree factorization.
std::vector<int> distinct_degree_profile(const UniPoly& squarefree);

struct FactorProfile {
  UniPoly squarefree_part;
  std::vector<FieldElem> roots_in_base;
  std::vector<int> degree_multiset;
};

// Throws InvalidInput on the zero polynomial.
FactorProfile uni_factor_profile(const UniPoly& f);

// Unique polynomial of degree < n through n points with distinct abscissae.
UniPoly interpolate(const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys);

// Field embedding GF(p^j) -> GF(p^e), j | e. The generator of the source is
// sent to the smallest-index root of its modulus in the target, so the map is
// a fixed function of the two fields.
FieldElem embed(const FieldElem& x, const Field& target);
UniPoly embed(const UniPoly& f, const Field& target);
std::vector<FieldElem> embed(const std::vector<FieldElem>& v, const Field& target);

}  // namespace epw
