#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "epw/incidence.hpp"
#include "epw/zlines.hpp"
#include "support.hpp"

using namespace epw;
using test::e;
using test::w;

namespace {

const Field& f107() {
  static const Field f = Field::prime(107);
  return f;
}

const Lagrangian& generic_A() {
  static const Lagrangian A = random_lagrangian(f107(), 11);
  return A;
}

// Points of Y_A with stratum exactly 2 collected from psi_1 fibers.
std::vector<Subspace> sample_Y(const Lagrangian& A, std::size_t count) {
  std::vector<Subspace> out;
  for (std::uint64_t s = 0; out.size() < count && s < 200; ++s) {
    const SamplePoint sp = sample_on_X(A, 1000 + s);
    if (sp.k != 1) continue;
    Psi1Options po;
    po.lines = 4;
    po.seed = s;
    po.max_roundtrips = 0;
    for (const auto& u : psi1_fiber_scan(A, sp.v, po).fiber)
      if (u.stratum == 2 && out.size() < count) out.push_back(u.U);
  }
  return out;
}

// The linear form b -> L(a ^ b) on q-coordinates, as a covector.
Vec plucker_row(const QpModel& m, const Vec& a) {
  const Field f = a[0].field();
  Vec row;
  for (std::size_t j = 0; j < 4; ++j) row.push_back(m.form_at(QpModel::plucker(a, unit_vec(f, 4, j))));
  return row;
}

}  // namespace

TEST_CASE("ru_det examples on U = <e1,e2,e3>") {
  const Field& f = f107();
  const CubeModel m(test::span_w(f, {1, 2, 3}));
  const MultiVector a1 = e(f, {1, 2, 4});
  CHECK(ru_det(m, a1).is_zero());
  CHECK(rank(m.chart(a1).M) == 1);
  const MultiVector a2 = a1 + e(f, {2, 3, 5});
  CHECK(ru_det(m, a2).is_zero());
  CHECK(rank(m.chart(a2).M) == 2);
  CHECK(classify(a2) == OrbitType::OmegaOpen);
  const MultiVector a3 = a2 + e(f, {1, 3, 6});
  CHECK_FALSE(ru_det(m, a3).is_zero());
  CHECK(classify(a3) == OrbitType::Generic);
  CHECK_THROWS_AS(m.chart(e(f, {4, 5, 6})), InvalidInput);
}

TEST_CASE("chart round trip") {
  const Field& f = f107();
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Subspace U = Subspace::span(f, kDimW, {random_vec(f, 6, rng), random_vec(f, 6, rng), random_vec(f, 6, rng)});
    const CubeModel m(U);
    const MultiVector a(3, family_T(U).random_element(rng));
    CHECK(m.from_chart(m.chart(a)) == a);
  }
}

TEST_CASE("ru_det vanishes exactly off the Generic orbit on T_U") {
  const Field& f = f107();
  Rng rng(2);
  int on_cone = 0;
  for (int i = 0; i < 1000; ++i) {
    const Subspace U = Subspace::span(f, kDimW, {random_vec(f, 6, rng), random_vec(f, 6, rng), random_vec(f, 6, rng)});
    const CubeModel m(U);
    MultiVector a(3, family_T(U).random_element(rng));
    if (i % 2) {
      // Push half the samples onto R_U: a chart matrix of rank <= 2.
      CubeModel::Chart ch = m.chart(a);
      const Vec r0 = ch.M.row(0), r1 = ch.M.row(1);
      ch.M.set_row(2, axpy(scale(f.random(rng), r0), f.random(rng), r1));
      a = m.from_chart(ch);
    }
    const bool zero = ru_det(m, a).is_zero();
    on_cone += zero;
    CHECK(zero == (classify(a) != OrbitType::Generic));
  }
  CHECK(on_cone >= 450);
}

TEST_CASE("ru_det zero set does not depend on the complement") {
  const Field& f = f107();
  Rng rng(3);
  const Subspace U = Subspace::span(f, kDimW, {random_vec(f, 6, rng), random_vec(f, 6, rng), random_vec(f, 6, rng)});
  const CubeModel base(U);
  std::vector<MultiVector> samples;
  for (int i = 0; i < 40; ++i) {
    CubeModel::Chart ch = base.chart(MultiVector(3, family_T(U).random_element(rng)));
    if (i % 2) ch.M.set_row(0, scale(f.random(rng), ch.M.row(1)));
    samples.push_back(base.from_chart(ch));
  }
  for (int c = 0; c < 10; ++c) {
    std::vector<Vec> comp;
    do {
      comp = {random_vec(f, 6, rng), random_vec(f, 6, rng), random_vec(f, 6, rng)};
    } while (U.sum(Subspace::span(f, kDimW, comp)).dim() != 6);
    const CubeModel other(U, comp);
    for (const auto& a : samples) {
      const FieldElem d0 = ru_det(base, a), d1 = ru_det(other, a);
      CHECK(d0.is_zero() == d1.is_zero());
      if (!d0.is_zero() && c == 0) CHECK_FALSE((d1 / d0).is_zero());
    }
  }
}

TEST_CASE("l_UA") {
  const Field& f = f107();
  SUBCASE("sampled U on Y_A gives a pencil in P(A) meet P(T_U)") {
    const auto Us = sample_Y(generic_A(), 3);
    REQUIRE(Us.size() == 3);
    for (const auto& U : Us) {
      const auto [a, b] = l_UA(generic_A(), U);
      const Subspace S = span_trivectors(f, {a, b});
      CHECK(S.dim() == 2);
      CHECK(generic_A().subspace().contains(S));
      CHECK(family_T(U).contains(S));
    }
  }
  SUBCASE("a z-line is the pencil of every U on L_l with stratum 2") {
    const ZLine z = zline_validate(w(f, 1), w(f, 2), e(f, {1, 5}) + e(f, {2, 6}) + e(f, {3, 4}));
    const Lagrangian A = lagrangian_through(z, f, 1);
    int checked = 0;
    for (std::uint64_t i = 0; i < 107; ++i) {
      const Subspace U = z.L().U_at(Param::at(f.element(i)));
      if (stratum(A, FamilyKind::T, U.basis_vectors()) != 2) continue;
      const auto [a, b] = l_UA(A, U);
      CHECK(span_trivectors(f, {a, b}) == z.span());
      ++checked;
    }
    CHECK(checked > 90);
  }
  SUBCASE("stratum 10 is rejected") {
    const Lagrangian T(family_T(test::span_w(f, {1, 2, 3})));
    CHECK_THROWS_AS(l_UA(T, test::span_w(f, {1, 2, 3})), Degenerate);
  }
}

TEST_CASE("pi_1 fibers are cubics of OmegaOpen points") {
  const auto Us = sample_Y(generic_A(), 20);
  REQUIRE(Us.size() == 20);
  int squarefree = 0;
  for (const auto& U : Us) {
    const Pi1Fiber fib = pi1_fiber(generic_A(), U);
    CHECK(fib.degree == 3);
    int sum = 0;
    for (int d : fib.factor_degrees) sum += d;
    if (fib.squarefree) {
      ++squarefree;
      CHECK(sum == 3);
      CHECK(fib.points.size() == 3);
    }
    for (const auto& p : fib.points) {
      CHECK(p.type == OrbitType::OmegaOpen);
      CHECK(p.v_on_X);
      CHECK(p.H_on_Xd);
      // The point lies on l_UA.
      CHECK(span_trivectors(fib.extension, {fib.eta0.embed(fib.extension), fib.eta1.embed(fib.extension)})
                .contains(p.alpha.coords()));
    }
  }
  CHECK(squarefree >= 18);
}

TEST_CASE("p_of_v") {
  const Field& f = f107();
  const Lagrangian& A = generic_A();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SamplePoint sp = sample_on_X(A, s);
    REQUIRE(sp.k == 1);
    const MultiVector p = p_of_v(A, sp.v);
    CHECK(A.contains(p));
    CHECK(family_F(sp.v).contains(p.coords()));
    CHECK(projectively_equal(phi_pair(p).v, sp.v));
  }
  // A stratum-2 point from a z-line.
  const ZLine z = zline_validate(w(f, 1), w(f, 2), e(f, {1, 5}) + e(f, {2, 6}) + e(f, {3, 4}));
  const Lagrangian B = lagrangian_through(z, f, 1);
  ScanOptions so;
  so.mode = ScanMode::Exhaustive;
  const LineScan ls = line_scan(B, Pencil::F(z.v1, z.v2), 2, so);
  REQUIRE_FALSE(ls.hits.empty());
  const Vec v2 = Pencil::F(z.v1, z.v2).datum_at(ls.hits.front())[0];
  CHECK_THROWS_AS(p_of_v(B, v2), Degenerate);
  CHECK_THROWS_AS(p_of_v(A, w(f, 1) /* generic A: stratum 0 */), Degenerate);
}

TEST_CASE("gradient of the sextic is phi_2 of p_of_v") {
  const Lagrangian& A = generic_A();
  SexticOptions so;
  so.validation = 0;
  const MultiPoly sx = sextic_interpolate(A, so).f;
  const auto pts = sample_many_on_X(A, 5, 50);
  int tested = 0;
  for (const auto& sp : pts) {
    if (sp.k != 1) continue;
    const Vec g = sx.gradient_at(sp.v);
    REQUIRE_FALSE(is_zero(g));
    CHECK(projectively_equal(g, phi_pair(p_of_v(A, sp.v)).H));
    CHECK(stratum(A, FamilyKind::Fdual, {g}) >= 1);
    ++tested;
  }
  CHECK(tested == 50);
}

TEST_CASE("Q_p examples for p = e1 ^ (e23 + e45)") {
  const Field& f = f107();
  const QpModel m(e(f, {1, 2, 3}) + e(f, {1, 4, 5}));
  CHECK(m.V() == test::span_w(f, {1, 2, 3, 4, 5}));
  CHECK(projectively_equal(m.v(), w(f, 1)));
  CHECK(projectively_equal(m.H(), w(f, 6)));
  CHECK(m.contains(test::span_w(f, {1, 2, 4})));
  CHECK_FALSE(m.contains(test::span_w(f, {1, 2, 3})));
  // Direct check: (e23 + e45) ^ e123 = e45 ^ e123 is nonzero.
  CHECK_FALSE(wedge(e(f, {2, 3}) + e(f, {4, 5}), e(f, {1, 2, 3})).is_zero());
  CHECK_FALSE(m.contains(test::span_w(f, {1, 2, 6})));
  CHECK_THROWS_AS(QpModel(e(f, {1, 2, 3})), InvalidInput);
}

TEST_CASE("Q_p form agrees with the p in T_U rank test") {
  const Field& f = f107();
  Rng rng(4);
  int inside = 0;
  for (int i = 0; i < 100; ++i) {
    MultiVector p;
    do {
      p = wedge(MultiVector::vector(random_vec(f, 6, rng)), test::random_mv(f, 2, rng));
    } while (classify(p) != OrbitType::OmegaOpen);
    const QpModel m(p);
    const Vec a = random_vec(f, 4, rng);
    Vec b = random_vec(f, 4, rng);
    if (i % 2) {
      // Move b into the kernel of b -> L(a ^ b).
      const auto ker = kernel(Matrix::from_rows(f, {plucker_row(m, a)}, 4));
      b = ker[rng.below(ker.size())];
    }
    const Subspace U = m.U_from(a, b);
    if (U.dim() != 3) continue;
    const bool in_q = m.contains(U);
    inside += in_q;
    CHECK(in_q == family_T(U).contains(p.coords()));
    CHECK(in_q == m.form_on(m.lift(a), m.lift(b)).is_zero());
  }
  CHECK(inside >= 40);
}

TEST_CASE("psi_1 fibers: quartic sections of Q_p and the round trip") {
  const Lagrangian& A = generic_A();
  const SamplePoint sp = sample_on_X(A, 77);
  REQUIRE(sp.k == 1);
  Psi1Options po;
  po.lines = 50;
  po.seed = 5;
  const Psi1Report rep = psi1_fiber_scan(A, sp.v, po);
  const QpModel m(rep.p);
  std::size_t quartic = 0;
  for (const auto& l : rep.lines) {
    REQUIRE_FALSE(l.secancy.identically_zero);
    CHECK(l.secancy.degree() <= 4);
    quartic += l.secancy.degree() == 4;
  }
  CHECK(5 * quartic >= 4 * rep.lines.size());
  REQUIRE_FALSE(rep.fiber.empty());
  std::size_t trips = 0;
  for (const auto& u : rep.fiber) {
    CHECK(u.U.contains(sp.v));
    CHECK(family_T(u.U).contains(rep.p.coords()));
    CHECK(stratum(A, FamilyKind::T, u.U.basis_vectors()) >= 2);
    CHECK(m.contains(u.U));
    if (u.roundtrip_checked) {
      ++trips;
      CHECK(u.roundtrip);
    }
  }
  CHECK(trips > 0);
}
