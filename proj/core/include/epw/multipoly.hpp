#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epw/error.hpp"
#include "epw/linalg.hpp"
#include "epw/unipoly.hpp"

namespace epw {

inline constexpr int kVars = 6;

using Exponent = std::array<std::uint8_t, kVars>;

// Lexicographic order with x0 largest: x0^d comes first.
struct LexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

// Sparse polynomial in x0..x5. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, FieldElem, LexDescending>;

  MultiPoly() = default;
  explicit MultiPoly(Field f) : field_(f) {}

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  FieldElem coeff(const Exponent& e) const;

  void add_term(const Exponent& e, const FieldElem& c);

  FieldElem eval(const Vec& x) const;
  MultiPoly partial(int var) const;
  Vec gradient_at(const Vec& x) const;
  Matrix hessian_at(const Vec& x) const;
  // f(a + t b) as a polynomial in t.
  UniPoly restrict_to_line(const Vec& a, const Vec& b) const;
  // Scaled so the first coefficient in lex order is 1.
  MultiPoly normalized() const;
  MultiPoly embed(const Field& target) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const FieldElem& s, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  static MultiPoly variable(Field f, int var);
  static MultiPoly constant(const FieldElem& c);
  // Linear form sum c_i x_i.
  static MultiPoly linear(const Vec& c);

  std::string to_string() const;

 private:
  Field field_;
  Terms terms_;
};

// All exponent vectors of total degree d, lex descending.
std::vector<Exponent> monomials(int d);
Vec eval_monomials(const std::vector<Exponent>& mons, const Vec& x);

// Raised by interpolate_form when the evaluation matrix does not have
// nullity one. nullity == 0 means no form of that degree vanishes on the
// points; nullity >= 2 means the points do not determine one.
class InterpolationError : public Degenerate {
 public:
  InterpolationError(std::size_t nullity, const std::string& what) : Degenerate(what), nullity_(nullity) {}
  std::size_t nullity() const { return nullity_; }

 private:
  std::size_t nullity_;
};

struct InterpolationResult {
  MultiPoly form;
  std::size_t monomial_count = 0;
  std::size_t rows = 0;
  std::size_t nullity = 0;
};

inline constexpr std::size_t kDefaultInterpolationMargin = 40;

// The unique (up to scale) degree-d form vanishing at every point. Requires
// at least C(d+5,5) + margin points.
InterpolationResult interpolate_form(const std::vector<Vec>& points, int d,
                                     std::size_t margin = kDefaultInterpolationMargin);

std::uint64_t binomial(int n, int k);

}  // namespace epw
