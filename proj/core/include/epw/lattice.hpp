#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace epw {

using LatVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct LatticeBlock {
  enum class Kind { U, U2, E8m1, Rank1 };
  Kind kind = Kind::U;
  std::int64_t value = 0;  // the generator's square for Rank1
  std::size_t offset = 0;
  std::size_t rank = 0;
  std::string label() const;
};

// Orthogonal direct sum of hyperbolic planes U, U(2), E8(-1) and rank-one
// lattices <n>, with named generators:
//   e_i, f_i  basis of the i-th U or U(2) block (e.f = 1 or 2, e^2 = f^2 = 0)
//   t_i       generator of the i-th rank-one block
//   r{b}_{j}  j-th simple root of the b-th E8(-1) block (Bourbaki order)
// and the aliases H = e1 + f1, d = e1 - f1, delta = the last t_i,
// E = e1, F = f1.
class IntLattice {
 public:
  IntLattice() = default;

  // "U+U", "U^2+E8m1^2+(-2)^2", "U3E8m1x2+(-4)", "U(2)", "<-4>".
  // Throws InvalidInput on a malformed spec.
  static IntLattice parse(const std::string& spec);
  static IntLattice from_gram(IntMatrix gram);
  // U^3 + E8(-1)^2 + <-2(n-1)>.
  static IntLattice k3n(int n);

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<LatticeBlock>& blocks() const { return blocks_; }
  std::string describe() const;

  std::int64_t pairing(const LatVec& x, const LatVec& y) const;
  std::int64_t square(const LatVec& x) const { return pairing(x, x); }
  // Row G x: pairings of x with the basis.
  LatVec pairings(const LatVec& x) const;

  // Named generator or alias; throws InvalidInput if unknown.
  LatVec generator(const std::string& name) const;
  // Integer combination of names ("2d+t1+t2", "12H-9delta") or a bracketed
  // coordinate list ("[1,0,...]").
  LatVec parse_vector(const std::string& expr) const;

 private:
  void add_block(LatticeBlock::Kind kind, std::int64_t value);
  IntMatrix gram_;
  std::vector<LatticeBlock> blocks_;
};

// Fixed negated Cartan matrix of E8.
IntMatrix e8_minus_one();
std::int64_t int_determinant(const IntMatrix& m);

// gcd of the pairings of x with the lattice; throws InvalidInput on zero.
std::int64_t divisibility(const IntLattice& L, const LatVec& x);
// gcd of pairings of x with the given vectors (a sublattice basis).
std::int64_t divisibility_in(const IntLattice& L, const LatVec& x, const std::vector<LatVec>& basis);
// x = content * primitive, content > 0; throws InvalidInput on zero.
std::pair<LatVec, std::int64_t> primitive_part(const LatVec& x);
// Basis of the integer solutions of w . x = 0.
std::vector<LatVec> integer_kernel(const LatVec& w);
// Basis of x^perp in L.
std::vector<LatVec> orthogonal_complement(const IntLattice& L, const LatVec& x);

struct LatticeCheck {
  std::string name;
  std::int64_t computed = 0;
  std::int64_t expected = 0;
  bool pass() const { return computed == expected; }
};

struct MukaiReport {
  std::vector<LatticeCheck> checks;
  bool pass() const;
};

// v = e1+e2+f1+f2 and H' = e1+f1-e2-f2 in U+U, plus the K3^[2] frame classes.
MukaiReport mukai_check();

// Divisor classes of K3^[3]: 2H - delta, H - delta, 12H - 9delta and its
// primitive part, with the values the arithmetic gives.
MukaiReport k3n3_divisor_check();

// Divisor classes of the EPW cube period domain. Lambda = U^2 + E8(-1)^2 +
// <-2>^2 sits in Lambda_Y = U^3 + E8(-1)^2 + <-4> as the orthogonal complement
// of h = 2e3 + 2f3 + delta (h^2 = 4, div h = 2), with t1 = e3 - f3 and
// t2 = e3 + f3 + delta. Divisibility is reported in both lattices.
struct PeriodDivisor {
  std::string name;
  std::int64_t square = 0;
  std::int64_t div_in_lambda = 0;
  std::int64_t div_in_lambda_y = 0;
};

struct PeriodEmbedding {
  IntLattice lambda, lambda_y;
  LatVec h;
  std::vector<LatVec> images;  // image of each basis vector of lambda
  bool isometric = false;      // Gram matrices agree
  bool orthogonal_to_h = false;
  std::int64_t det_lambda = 0;
  std::int64_t det_h_perp = 0;  // Gram determinant of h^perp in lambda_y
  LatVec image(const LatVec& x) const;
};

PeriodEmbedding period_embedding();
// t1+t2, d, t1, 2d+t1+t2.
std::vector<PeriodDivisor> period_divisor_table();

struct SectionClaim {
  std::string claim;
  std::int64_t stated = 0;
  std::int64_t computed = 0;
  bool consistent() const { return stated == computed; }
};

// The rank-two lattice with E^2 = -12, E.F forced by (E + 4F)^2 = 4 and
// F^2 = 0; lists the stated values next to the computed ones.
std::vector<SectionClaim> section_lattice_claims();

}  // namespace epw
