#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "epw/lagrangian.hpp"
#include "support.hpp"

using namespace epw;
using test::e;
using test::w;

namespace {

Subspace random_isotropic(const Field& f, std::size_t r, Rng& rng) {
  const Lagrangian B = random_lagrangian(f, rng.next());
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < r; ++i) xs.push_back(B.subspace().random_element(rng));
  return Subspace::span(f, 20, xs);
}

}  // namespace

TEST_CASE("is_lagrangian examples") {
  const Field f = Field::prime(107);
  CHECK(is_lagrangian(family_T(test::span_w(f, {1, 2, 3}))));
  CHECK(is_lagrangian(family_F(w(f, 1))));
  std::vector<Vec> rows = {e(f, {1, 2, 3}).coords(), e(f, {4, 5, 6}).coords()};
  for (int i = 1; rows.size() < 10; ++i) {
    const Vec x = unit_vec(f, 20, static_cast<std::size_t>(i));
    if (x != rows[0] && x != rows[1]) rows.push_back(x);
  }
  const Subspace S = Subspace::span(f, 20, rows);
  REQUIRE(S.dim() == 10);
  CHECK_FALSE(is_lagrangian(S));
  CHECK_THROWS_AS(Lagrangian{S}, InvalidInput);
}

TEST_CASE("random_lagrangian is Lagrangian and deterministic") {
  const Field f = Field::prime(107);
  const Lagrangian a = random_lagrangian(f, 1), b = random_lagrangian(f, 1), c = random_lagrangian(f, 2);
  CHECK(a == b);
  CHECK(a.subspace().basis() == b.subspace().basis());
  CHECK_FALSE(a == c);
  for (std::uint64_t s = 0; s < 1000; ++s) CHECK(is_lagrangian(random_lagrangian(f, s).subspace()));
  const Field g = build_extension(107, 2);
  CHECK(is_lagrangian(random_lagrangian(g, 3).subspace()));
}

TEST_CASE("random_lagrangian honours a contains constraint") {
  const Field f = Field::prime(107);
  const MultiVector alpha = e(f, {1, 5}) + e(f, {2, 6}) + e(f, {3, 4});
  const MultiVector eta1 = wedge(e(f, {1}), alpha), eta2 = wedge(e(f, {2}), alpha);
  const Subspace R = span_trivectors(f, {eta1, eta2});
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Lagrangian A = random_lagrangian(f, s, Constraint::contains(R));
    CHECK(A.contains(eta1));
    CHECK(A.contains(eta2));
  }
  const Subspace bad = span_trivectors(f, {e(f, {1, 2, 3}), e(f, {4, 5, 6})});
  CHECK_THROWS_AS(random_lagrangian(f, 1, Constraint::contains(bad)), InvalidInput);
}

TEST_CASE("contains_decomposable carries its witness") {
  const Field f = Field::prime(107);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Lagrangian A = random_lagrangian(f, s, Constraint::contains_decomposable());
    REQUIRE_FALSE(A.provenance().witnesses.empty());
    const Vec& x = A.provenance().witnesses.front();
    CHECK(A.contains(x));
    CHECK(classify(MultiVector(3, x)) == OrbitType::Decomposable);
  }
}

TEST_CASE("graph construction rejects non-symmetric matrices") {
  const Field f = Field::prime(107);
  Rng rng(7);
  Matrix S(f, 10, 10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i; j < 10; ++j) S(i, j) = S(j, i) = f.random(rng);
  CHECK(is_lagrangian(lagrangian_from_graph(S)));
  for (int k = 0; k < 20; ++k) {
    Matrix T = S;
    const std::size_t i = rng.below(10), j = (i + 1 + rng.below(9)) % 10;
    T(i, j) += f.one();
    CHECK_THROWS_AS(lagrangian_from_graph(T), InvalidInput);
  }
}

TEST_CASE("reference splitting is dual") {
  const Field f = Field::prime(107);
  const auto a = reference_basis(f), b = reference_dual_basis(f);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      CHECK(omega(a[i], b[j]) == (i == j ? f.one() : f.zero()));
      CHECK(omega(a[i], a[j]).is_zero());
      CHECK(omega(b[i], b[j]).is_zero());
    }
}

TEST_CASE("symplectic_reduce examples") {
  const Field f = Field::prime(107);
  const ReducedSpace r1 = symplectic_reduce(span_trivectors(f, {e(f, {1, 2, 3})}));
  CHECK(r1.quotient_dim() == 18);
  const Subspace q = r1.reduce(family_T(test::span_w(f, {1, 2, 3})));
  CHECK(q.dim() == 9);
  CHECK(r1.is_isotropic(q));

  const ReducedSpace r0 = symplectic_reduce(Subspace(f, 20));
  CHECK(r0.quotient_dim() == 20);
  const Lagrangian A = random_lagrangian(f, 4);
  CHECK(r0.reduce(A.subspace()).dim() == 10);
  CHECK(r0.is_isotropic(r0.reduce(A.subspace())));

  CHECK_THROWS_AS(symplectic_reduce(span_trivectors(f, {e(f, {1, 2, 3}), e(f, {4, 5, 6})})), InvalidInput);
}

TEST_CASE("reduction of a Lagrangian is Lagrangian") {
  const Field f = Field::prime(107);
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const std::size_t r = 1 + rng.below(6);
    const Subspace R = random_isotropic(f, r, rng);
    const ReducedSpace red = symplectic_reduce(R);
    REQUIRE(red.quotient_dim() == 20 - 2 * R.dim());
    // Mix in A's built from R's own Lagrangian so that A meet R is sometimes large.
    const Lagrangian A = i % 2 ? random_lagrangian(f, rng.next())
                               : random_lagrangian(f, rng.next(), Constraint::contains(R));
    const Subspace q = red.reduce(A.subspace());
    CHECK(q.dim() == 10 - R.dim());
    CHECK(red.is_isotropic(q));
    // Direct formula: dim (A meet R^perp) - dim (A meet R).
    CHECK(q.dim() == intersect_dim(A.subspace(), red.R_perp()) - intersect_dim(A.subspace(), R));
  }
}
