#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "epw/multipoly.hpp"
#include "epw/unipoly.hpp"
#include "support.hpp"

using namespace epw;

namespace {

UniPoly poly(const Field& f, std::initializer_list<std::int64_t> low_to_high) {
  std::vector<FieldElem> c;
  for (auto x : low_to_high) c.push_back(f.from_int(x));
  return UniPoly(f, c);
}

UniPoly random_monic(const Field& f, int d, Rng& rng) {
  std::vector<FieldElem> c;
  for (int i = 0; i < d; ++i) c.push_back(f.random(rng));
  c.push_back(f.one());
  return UniPoly(f, c);
}

// Degrees of the irreducible factors of a squarefree polynomial of degree
// <= 4, by trial division: linear factors by evaluation, quadratic ones
// against every monic quadratic without roots.
std::vector<int> brute_force_degrees(UniPoly g) {
  const Field f = g.field();
  std::vector<int> out;
  for (std::uint64_t i = 0; i < f.order(); ++i) {
    const FieldElem x = f.element(i);
    if (g.eval(x).is_zero()) {
      g = g / (poly(f, {0, 1}) - UniPoly::constant(x));
      out.push_back(1);
    }
  }
  for (std::uint64_t a = 0; a < f.order() && g.degree() >= 2; ++a)
    for (std::uint64_t b = 0; b < f.order() && g.degree() >= 2; ++b) {
      const UniPoly q(f, {f.element(b), f.element(a), f.one()});
      if (!roots_by_scan(q).empty()) continue;
      if ((g % q).is_zero()) {
        g = g / q;
        out.push_back(2);
      }
    }
  if (g.degree() > 0) out.push_back(g.degree());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("prime field GF(107) has no modulus") {
  const Field f = Field::prime(107);
  CHECK(f.is_prime_field());
  CHECK(f.order() == 107);
  CHECK(f.modulus().size() <= 2);
  CHECK(build_extension(107, 1) == f);
}

TEST_CASE("GF(107^2) and the quadratic a^2 - 7a + 52") {
  const Field f = Field::prime(107);
  CHECK(poly(f, {52, -7, 1}).is_irreducible());
  const Field g = build_extension(107, 2);
  CHECK(g.degree() == 2);
  CHECK(g.order() == 107u * 107u);
  const auto m = g.modulus();
  std::vector<FieldElem> c;
  for (auto x : m) c.push_back(f.from_int(x));
  CHECK(UniPoly(f, c).is_irreducible());
}

TEST_CASE("GF(7^3) modulus is irreducible by exhaustive search") {
  const Field base = Field::prime(7);
  const Field g = build_extension(7, 3);
  std::vector<FieldElem> c;
  for (auto x : g.modulus()) c.push_back(base.from_int(x));
  const UniPoly m(base, c);
  REQUIRE(m.degree() == 3);
  for (int x = 0; x < 7; ++x) CHECK_FALSE(m.eval(base.from_int(x)).is_zero());
  // A reducible cubic has a linear factor; check the quadratic side too.
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) CHECK_FALSE((m % poly(base, {b, a, 1})).is_zero());
}

TEST_CASE("invalid primes and extension degrees are rejected") {
  CHECK_THROWS_AS(Field::prime(4), InvalidInput);
  CHECK_THROWS_AS(Field::prime(1), InvalidInput);
  CHECK_THROWS_AS(build_extension(107, kMaxExtension + 1), InvalidInput);
}

TEST_CASE("field axioms on random elements") {
  for (int k = 1; k <= 3; ++k) {
    const Field f = build_extension(k == 1 ? 10007 : 107, k);
    Rng rng(11 + k);
    for (int i = 0; i < 1000; ++i) {
      const FieldElem a = f.random_nonzero(rng), b = f.random(rng), c = f.random(rng);
      CHECK((a * a.inverse()).is_one());
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("Frobenius fixes exactly the prime field inside GF(107^2)") {
  const Field g = build_extension(107, 2);
  std::size_t fixed = 0;
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    const FieldElem x = g.element(i);
    const bool fx = x.frobenius() == x;
    CHECK(fx == x.in_prime_field());
    fixed += fx;
  }
  CHECK(fixed == 107);
}

TEST_CASE("uni_factor_profile examples") {
  const Field f = Field::prime(107);
  SUBCASE("t^2 - 1") {
    const auto prof = uni_factor_profile(poly(f, {-1, 0, 1}));
    CHECK(prof.roots_in_base == std::vector<FieldElem>{f.from_int(1), f.from_int(106)});
    CHECK(prof.degree_multiset == std::vector<int>{1, 1});
  }
  SUBCASE("(t-2)^2 (t-3)") {
    const UniPoly g = poly(f, {-2, 1}) * poly(f, {-2, 1}) * poly(f, {-3, 1});
    const auto prof = uni_factor_profile(g);
    CHECK(prof.squarefree_part == poly(f, {-2, 1}) * poly(f, {-3, 1}));
    CHECK(prof.roots_in_base == std::vector<FieldElem>{f.from_int(2), f.from_int(3)});
  }
  CHECK_THROWS_AS(uni_factor_profile(UniPoly(f)), InvalidInput);
}

TEST_CASE("distinct-degree profile matches trial division on random quartics") {
  const Field f = Field::prime(107);
  Rng rng(4);
  int tested = 0;
  while (tested < 12) {
    const UniPoly g = random_monic(f, 4, rng);
    if (gcd(g, g.derivative()).degree() > 0) continue;
    const auto prof = distinct_degree_profile(g);
    CHECK(std::accumulate(prof.begin(), prof.end(), 0) == 4);
    CHECK(prof == brute_force_degrees(g));
    ++tested;
  }
}

TEST_CASE("deg radical + deg gcd(f, f') = deg f") {
  const Field f = Field::prime(107);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    UniPoly g = UniPoly::constant(f.one());
    const int parts = 1 + static_cast<int>(rng.below(3));
    for (int j = 0; j < parts; ++j) {
      const UniPoly h = random_monic(f, 1 + static_cast<int>(rng.below(3)), rng);
      for (std::uint64_t m = 0; m <= rng.below(3); ++m) g = g * h;
    }
    // Random factors may share irreducible pieces; the identity needs every
    // multiplicity below p, which holds here.
    CHECK(radical(g).degree() + gcd(g, g.derivative()).degree() == g.degree());
  }
}

TEST_CASE("root finders agree: scan vs gcd with t^q - t") {
  for (std::uint32_t p : {107u, 10007u}) {
    const Field f = Field::prime(p);
    Rng rng(p);
    for (int i = 0; i < 100; ++i) {
      UniPoly g = random_monic(f, 1 + static_cast<int>(rng.below(8)), rng);
      if (i % 3 == 0) g = g * UniPoly::from_roots(f, {f.random(rng), f.random(rng)});
      CHECK(roots_by_scan(g) == roots_by_gcd(g));
    }
  }
  const Field g2 = build_extension(107, 2);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const UniPoly g = UniPoly::from_roots(g2, {g2.random(rng), g2.random(rng)}) * random_monic(g2, 3, rng);
    CHECK(roots_by_scan(g) == roots_by_gcd(g));
  }
}

TEST_CASE("univariate interpolation through its own values") {
  const Field f = Field::prime(10007);
  Rng rng(8);
  const UniPoly g = random_monic(f, 5, rng);
  std::vector<FieldElem> xs, ys;
  for (int i = 0; i < 6; ++i) {
    xs.push_back(f.from_int(3 * i + 1));
    ys.push_back(g.eval(xs.back()));
  }
  CHECK(interpolate(xs, ys) == g);
}

TEST_CASE("interpolate_form: hyperplane and split quadric") {
  const Field f = Field::prime(10007);
  Rng rng(21);
  std::vector<Vec> hyper, split;
  for (int i = 0; i < 60; ++i) {
    Vec x = random_vec(f, kVars, rng);
    x[0] = f.zero();
    hyper.push_back(x);
    Vec y = random_vec(f, kVars, rng);
    y[i % 2] = f.zero();
    split.push_back(y);
  }
  const auto r1 = interpolate_form(hyper, 1, 20);
  CHECK(r1.nullity == 1);
  CHECK(r1.form.normalized() == MultiPoly::variable(f, 0));
  const auto r2 = interpolate_form(split, 2, 20);
  CHECK(r2.form.normalized() == MultiPoly::variable(f, 0) * MultiPoly::variable(f, 1));
}

TEST_CASE("interpolate_form recovers random forms of degree <= 3 from points on V(g)") {
  const Field f = Field::prime(10007);
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 3;
    const MultiPoly g = test::random_form(f, d, rng);
    std::vector<Vec> pts;
    const std::size_t need = binomial(d + 5, 5) + kDefaultInterpolationMargin;
    while (pts.size() < need) {
      const Vec a = random_vec(f, kVars, rng), b = random_vec(f, kVars, rng);
      const UniPoly r = g.restrict_to_line(a, b);
      if (r.is_zero()) continue;
      for (const auto& t : roots(r)) pts.push_back(axpy(a, t, b));
    }
    const auto res = interpolate_form(pts, d);
    CHECK(res.nullity == 1);
    CHECK(res.form.normalized() == g.normalized());
  }
}

TEST_CASE("interpolate_form reports nullity on under-determined input") {
  const Field f = Field::prime(107);
  Rng rng(1);
  std::vector<Vec> pts;
  for (int i = 0; i < 60; ++i) {
    Vec x = random_vec(f, kVars, rng);
    x[0] = f.zero();
    x[1] = f.zero();
    pts.push_back(x);
  }
  try {
    (void)interpolate_form(pts, 1, 20);
    FAIL("expected InterpolationError");
  } catch (const InterpolationError& e) {
    CHECK(e.nullity() == 2);
  }
}

TEST_CASE("field embedding is a ring map GF(107^2) -> GF(107^4)") {
  const Field a = build_extension(107, 2), b = build_extension(107, 4);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const FieldElem x = a.random(rng), y = a.random(rng);
    CHECK(embed(x * y, b) == embed(x, b) * embed(y, b));
    CHECK(embed(x + y, b) == embed(x, b) + embed(y, b));
  }
}
