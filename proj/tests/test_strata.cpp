#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "epw/strata.hpp"
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

// One interpolated sextic per Lagrangian, shared by the cases below.
const SexticResult& sextic_of(const Lagrangian& A) {
  static std::vector<std::pair<Lagrangian, SexticResult>> cache;
  for (const auto& [B, r] : cache)
    if (B == A) return r;
  SexticOptions so;
  so.validation = 200;
  cache.emplace_back(A, sextic_interpolate(A, so));
  return cache.back().second;
}

ZLine standard_zline(const Field& f) {
  return zline_validate(w(f, 1), w(f, 2), e(f, {1, 5}) + e(f, {2, 6}) + e(f, {3, 4}));
}

}  // namespace

TEST_CASE("intersect_dim examples") {
  const Field& f = f107();
  CHECK(intersect_dim(family_F(w(f, 1)), family_T(test::span_w(f, {1, 2, 3}))) == 7);
  CHECK(intersect_dim(family_T(test::span_w(f, {1, 2, 3})), family_T(test::span_w(f, {4, 5, 6}))) == 0);
  const Lagrangian A = random_lagrangian(f, 1);
  CHECK(intersect_dim(A.subspace(), A.subspace()) == 10);
}

TEST_CASE("stratum examples") {
  const Field& f = f107();
  const Lagrangian T(family_T(test::span_w(f, {1, 2, 3})));
  CHECK(stratum(T, FamilyKind::T, test::span_w(f, {1, 2, 3}).basis_vectors()) == 10);
  CHECK(stratum(T, FamilyKind::T, test::span_w(f, {4, 5, 6}).basis_vectors()) == 0);
}

TEST_CASE("X_A holds about 1/p of the points of P(W)") {
  // A degree-6 hypersurface has p^4 + O(p^3) points against p^5 + ... in P^5.
  const Field& f = f107();
  const Lagrangian A = random_lagrangian(f, 1);
  Rng rng(5);
  const int n = 10000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += stratum(A, FamilyKind::F, {random_vec(f, kDimW, rng)}) >= 1;
  const double p = 1.0 / 107, mean = n * p, sd = std::sqrt(n * p * (1 - p));
  CHECK(std::abs(hits - mean) < 5 * sd);
}

TEST_CASE("line_scan on a random F pencil matches the sextic restriction") {
  const Field& f = f107();
  const Lagrangian A = random_lagrangian(f, 2);
  const MultiPoly& sx = sextic_of(A).f;
  Rng rng(6);
  std::size_t max_hits = 0;
  for (int i = 0; i < 200; ++i) {
    const Pencil pen = random_pencil(f, FamilyKind::F, rng);
    ScanOptions so;
    so.mode = ScanMode::Exhaustive;
    const LineScan ls = line_scan(A, pen, 1, so);
    max_hits = std::max(max_hits, ls.hits.size());
    // Oracle coherence: base roots of the secancy polynomial are exactly the scan hits.
    REQUIRE_FALSE(ls.secancy.identically_zero);
    CHECK(ls.secancy.base_roots() == ls.hits);
    CHECK(ls.secancy.degree() == 6);
    // Cross-oracle with the interpolated sextic.
    const UniPoly r = sx.restrict_to_line(pen.d0, pen.d1);
    std::vector<Param> expect;
    for (const auto& t : roots(r)) expect.push_back(Param::at(t));
    if (r.degree() < 6) expect.push_back(Param::inf());
    CHECK(expect == ls.hits);
  }
  CHECK(max_hits <= 6);
}

TEST_CASE("Fast and exhaustive scans agree") {
  const Field& f = f107();
  const Lagrangian A = random_lagrangian(f, 3);
  Rng rng(7);
  for (FamilyKind kind : {FamilyKind::F, FamilyKind::Fdual, FamilyKind::T}) {
    for (int i = 0; i < 10; ++i) {
      const Pencil pen = random_pencil(f, kind, rng);
      ScanOptions ex, fast;
      ex.mode = ScanMode::Exhaustive;
      fast.mode = ScanMode::Fast;
      const std::size_t target = kind == FamilyKind::T ? 2 : 1;
      const LineScan a = line_scan(A, pen, target, ex), b = line_scan(A, pen, target, fast);
      CHECK(a.hits == b.hits);
      CHECK(a.secancy.affine == b.secancy.affine);
      CHECK(a.secancy.infinity_multiplicity == b.secancy.infinity_multiplicity);
    }
  }
}

TEST_CASE("z-line image pencil lies in X_A and meets D^2 in four points") {
  const Field& f = f107();
  const ZLine z = standard_zline(f);
  const Lagrangian A = lagrangian_through(z, f, 1);
  ScanOptions so;
  so.mode = ScanMode::Exhaustive;
  const LineScan l1 = line_scan(A, Pencil::F(z.v1, z.v2), 1, so);
  CHECK(l1.secancy.identically_zero);
  CHECK(l1.min_stratum >= 1);
  const LineScan l2 = line_scan(A, Pencil::F(z.v1, z.v2), 2, so);
  CHECK(l2.secancy.degree() == 4);
  CHECK(l2.secancy.squarefree());
}

TEST_CASE("sample_on_X") {
  const Field& f = f107();
  const Lagrangian A = random_lagrangian(f, 1);
  const SamplePoint a = sample_on_X(A, 9), b = sample_on_X(A, 9);
  CHECK(a.k == 1);
  CHECK(a.v == b.v);
  CHECK(stratum(A, FamilyKind::F, {a.v}) == 1);

  const Field g = Field::prime(10007);
  const Lagrangian B = random_lagrangian(g, 1);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SamplePoint sp = sample_on_X(B, s);
    CHECK(sp.k == 1);
    CHECK(stratum(B, FamilyKind::F, {sp.v}) == 1);
  }

  const Lagrangian T(family_T(test::span_w(f, {1, 2, 3})));
  const SamplePoint t = sample_on_X(T, 1);
  CHECK(t.k >= 1);
  CHECK(stratum(T, FamilyKind::F, {t.v}) == t.k);

  const auto many = sample_many_on_X(A, 3, 30, 1);
  CHECK(many.size() == 30);
  for (const auto& sp : many) CHECK(stratum(A, FamilyKind::F, {sp.v}) == sp.k);
}

TEST_CASE("sextic over GF(10007): nullity 1, degree 6, vanishes on fresh points") {
  const Field g = Field::prime(10007);
  const Lagrangian A = random_lagrangian(g, 5);
  SexticOptions so;
  so.validation = 1000;
  const SexticResult r = sextic_interpolate(A, so);
  CHECK(r.nullity == 1);
  CHECK(r.rows >= binomial(11, 5));
  CHECK(r.f.is_homogeneous());
  CHECK(r.f.total_degree() == 6);
  CHECK(r.validated == 1000);
  CHECK(r.validation_failures == 0);
  // Deterministic in the seed.
  so.validation = 0;
  CHECK(sextic_interpolate(A, so).f == r.f);
}

TEST_CASE("sextic is singular along D^2 and tangent planes contain their points") {
  const Field& f = f107();
  const ZLine z = standard_zline(f);
  std::size_t points = 0;
  for (std::uint64_t seed = 1; points < 20 && seed < 20; ++seed) {
    const Lagrangian A = lagrangian_through(z, f, seed);
    const LineScan ls = line_scan(A, Pencil::F(z.v1, z.v2), 2);
    if (ls.secancy.identically_zero || ls.secancy.infinity_multiplicity) continue;
    const MultiPoly& sx = sextic_of(A).f;
    int k = 1;
    for (int d : ls.secancy.factor_degrees()) k = std::lcm(k, d);
    const Field ext = build_extension(107, k);
    const MultiPoly fe = sx.embed(ext);
    for (const auto& t : roots(embed(ls.secancy.affine, ext))) {
      const Vec p = axpy(embed(z.v1, ext), t, embed(z.v2, ext));
      CHECK(stratum(embed(A, ext), FamilyKind::F, {p}) == 2);
      CHECK(is_zero(fe.gradient_at(p)));
      CHECK(is_zero(fe.hessian_at(p).apply(p)));
      const TangentPlane tp = tangent_plane_D2(A, sx, p);
      CHECK(tp.contains_point);
      CHECK(tp.hessian_rank == 3);
      CHECK(tp.methods_agree);
      CHECK(tp.plane.dim() == 3);
      ++points;
    }
  }
  CHECK(points >= 20);
}

TEST_CASE("genericity probe") {
  const Field g = Field::prime(10007);
  const std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  const GenericityReport r = genericity_probe(random_lagrangian(g, 1), 10000, 1, jobs);
  CHECK(r.generic());
  CHECK(r.trials == 10000);

  const Field& f = f107();
  const Lagrangian D = random_lagrangian(f, 2, Constraint::contains_decomposable());
  CHECK(genericity_probe(D, 20, 1).decomposable_hits > 0);

  const Lagrangian T(family_T(test::span_w(f, {1, 2, 3})));
  const GenericityReport t = genericity_probe(T, 20, 1);
  CHECK_FALSE(t.generic());
  CHECK(t.decomposable_hits > 0);
}

TEST_CASE("degenerate pencils are rejected") {
  const Field& f = f107();
  const Lagrangian A = random_lagrangian(f, 1);
  CHECK_THROWS_AS(line_scan(A, Pencil::F(w(f, 1), w(f, 1)), 1), InvalidInput);
  CHECK_THROWS_AS(GLine(test::span_w(f, {1}), test::span_w(f, {1, 2, 3, 4})), InvalidInput);
  CHECK_THROWS_AS(GLine(test::span_w(f, {1, 5}), test::span_w(f, {1, 2, 3, 4})), InvalidInput);
}
