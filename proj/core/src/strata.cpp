#include "epw/strata.hpp"

#include <algorithm>

#include "epw/error.hpp"
#include "epw/parallel.hpp"

namespace epw {

namespace {

FieldElem param_value(const Param& t) { return t.t; }

std::vector<Param> all_params(const Field& f) {
  std::vector<Param> out;
  out.reserve(f.order() + 1);
  for (std::uint64_t i = 0; i < f.order(); ++i) out.push_back(Param::at(f.element(i)));
  out.push_back(Param::inf());
  return out;
}

// Pairing matrix of A's basis rows against a spanning set of the fiber.
Matrix pairing_matrix(const std::vector<Vec>& a, FamilyKind kind, const std::vector<Vec>& datum) {
  const Field f = a.at(0).at(0).field();
  switch (kind) {
    case FamilyKind::F: {
      const MultiVector v = MultiVector::vector(datum.at(0));
      Matrix m(f, a.size(), grade_dim(2));
      for (std::size_t j = 0; j < grade_dim(2); ++j) {
        MultiVector b(f, 2);
        b[j] = f.one();
        const Vec g = wedge(v, b).coords();
        for (std::size_t i = 0; i < a.size(); ++i) m(i, j) = omega(a[i], g);
      }
      return m;
    }
    case FamilyKind::Fdual: {
      Matrix m(f, a.size(), grade_dim(2));
      for (std::size_t i = 0; i < a.size(); ++i) m.set_row(i, contract(datum.at(0), MultiVector(3, a[i])).coords());
      return m;
    }
    case FamilyKind::T: {
      const auto& u = datum;
      if (u.size() != 3) throw InvalidInput("T datum must be three vectors");
      std::vector<Vec> gens;
      const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
      for (auto [p, q] : pairs) {
        const MultiVector uu = wedge(MultiVector::vector(u[p]), MultiVector::vector(u[q]));
        for (int w = 1; w <= kDimW; ++w) gens.push_back(wedge(uu, MultiVector::blade(f, {w})).coords());
      }
      Matrix m(f, a.size(), gens.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) m(i, j) = omega(a[i], gens[j]);
      return m;
    }
  }
  throw InvalidInput("unknown family kind");
}

Pencil swapped(const Pencil& p) {
  // Same pencil with the parameter t -> 1/t.
  if (p.kind == FamilyKind::T) return Pencil::T(GLine::swapped_copy(p.line));
  Pencil s = p;
  std::swap(s.d0, s.d1);
  return s;
}

// det(M0 + t M1) as a polynomial, by evaluation and interpolation when the
// field has enough points and by fraction-free elimination otherwise.
UniPoly det_pencil(const Matrix& M0, const Matrix& M1) {
  const Field f = M0.field();
  const std::size_t n = M0.rows();
  if (f.order() > n) {
    std::vector<FieldElem> xs, ys;
    for (std::size_t j = 0; j <= n; ++j) {
      const FieldElem t = f.element(j);
      xs.push_back(t);
      ys.push_back(determinant(M0 + t * M1));
    }
    return interpolate(xs, ys);
  }
  std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = UniPoly(f, {M0(i, j), M1(i, j)});
  UniPoly prev = UniPoly::constant(f.one());
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && m[r][k].is_zero()) ++r;
    if (r == n) return UniPoly(f);
    if (r != k) {
      std::swap(m[r], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  UniPoly d = m[n - 1][n - 1];
  return negate ? (-f.one()) * d : d;
}

// gcd of `count` random s x s minors of P0 + t P1; zero if all vanish.
UniPoly minor_gcd(const PairingPencil& pp, std::size_t s, std::size_t count, Rng& rng) {
  const Field f = pp.P0.field();
  UniPoly g(f);
  for (std::size_t i = 0; i < count; ++i) {
    const Matrix R = Matrix::random(f, s, pp.P0.rows(), rng);
    const Matrix C = Matrix::random(f, pp.P0.cols(), s, rng);
    g = gcd(g, det_pencil(R * pp.P0 * C, R * pp.P1 * C));
  }
  return g;
}

}  // namespace

GLine::GLine(Subspace V, Subspace P) : V_(std::move(V)), P_(std::move(P)) {
  if (V_.ambient() != kDimW || P_.ambient() != kDimW) throw InvalidInput("GLine subspaces must live in W");
  if (V_.dim() != 2 || P_.dim() != 4) throw InvalidInput("GLine needs dim V = 2 and dim P = 4");
  if (!P_.contains(V_)) throw InvalidInput("GLine needs V inside P");
  const auto vb = V_.basis_vectors();
  x_ = vb[0];
  y_ = vb[1];
  Subspace acc = V_;
  std::vector<Vec> extra;
  for (const auto& b : P_.basis_vectors()) {
    if (acc.contains(b)) continue;
    extra.push_back(b);
    acc = acc.sum(Subspace::span(V_.field(), kDimW, {b}));
  }
  p0_ = extra.at(0);
  p1_ = extra.at(1);
}

GLine GLine::swapped_copy(const GLine& l) {
  GLine s = l;
  std::swap(s.p0_, s.p1_);
  return s;
}

std::vector<Vec> GLine::basis_at(const Param& t) const {
  if (t.infinity) return {x_, y_, p1_};
  return {x_, y_, axpy(p0_, param_value(t), p1_)};
}

Subspace GLine::U_at(const Param& t) const { return Subspace::span(V_.field(), kDimW, basis_at(t)); }

GLine GLine::embed(const Field& target) const {
  GLine g;
  g.V_ = V_.embed(target);
  g.P_ = P_.embed(target);
  g.x_ = epw::embed(x_, target);
  g.y_ = epw::embed(y_, target);
  g.p0_ = epw::embed(p0_, target);
  g.p1_ = epw::embed(p1_, target);
  return g;
}

Pencil Pencil::F(Vec a, Vec b) {
  if (a.size() != kDimW || b.size() != kDimW) throw InvalidInput("pencil endpoints must be vectors of W");
  if (Subspace::span(a.at(0).field(), kDimW, {a, b}).dim() != 2) throw InvalidInput("pencil endpoints are dependent");
  Pencil p;
  p.kind = FamilyKind::F;
  p.d0 = std::move(a);
  p.d1 = std::move(b);
  return p;
}

Pencil Pencil::Fdual(Vec a, Vec b) {
  Pencil p = F(std::move(a), std::move(b));
  p.kind = FamilyKind::Fdual;
  return p;
}

Pencil Pencil::T(GLine l) {
  Pencil p;
  p.kind = FamilyKind::T;
  p.line = std::move(l);
  return p;
}

Field Pencil::field() const { return kind == FamilyKind::T ? line.V().field() : d0.at(0).field(); }

std::vector<Vec> Pencil::datum_at(const Param& t) const {
  if (kind == FamilyKind::T) return line.basis_at(t);
  if (t.infinity) return {d1};
  return {axpy(d0, param_value(t), d1)};
}

Pencil Pencil::embed(const Field& target) const {
  Pencil p = *this;
  if (kind == FamilyKind::T) {
    p.line = line.embed(target);
  } else {
    p.d0 = epw::embed(d0, target);
    p.d1 = epw::embed(d1, target);
  }
  return p;
}

std::size_t stratum(const Subspace& A, FamilyKind kind, const std::vector<Vec>& datum) {
  return intersect_dim(A, family_subspace(kind, datum));
}

std::size_t stratum(const Lagrangian& A, FamilyKind kind, const std::vector<Vec>& datum) {
  return stratum(A.subspace(), kind, datum);
}

Matrix PairingPencil::at(const Param& t) const {
  if (t.infinity) return Pinf;
  return P0 + t.t * P1;
}

std::size_t PairingPencil::stratum_at(const Param& t) const { return P0.rows() - rank(at(t)); }

PairingPencil pairing_pencil(const Subspace& A, const Pencil& pencil) {
  if (!(A.field() == pencil.field())) throw InvalidInput("Lagrangian and pencil are over different fields");
  const auto a = A.basis_vectors();
  const Field f = A.field();
  PairingPencil pp;
  pp.P0 = pairing_matrix(a, pencil.kind, pencil.datum_at(Param::at(f.zero())));
  pp.P1 = pairing_matrix(a, pencil.kind, pencil.datum_at(Param::at(f.one()))) + (-f.one()) * pp.P0;
  pp.Pinf = pairing_matrix(a, pencil.kind, pencil.datum_at(Param::inf()));
  return pp;
}

int SecancyPolynomial::degree() const { return identically_zero ? -1 : affine.degree() + infinity_multiplicity; }

bool SecancyPolynomial::squarefree() const {
  if (identically_zero) return false;
  if (infinity_multiplicity > 1) return false;
  if (affine.degree() <= 0) return true;
  return radical(affine).degree() == affine.degree();
}

std::vector<int> SecancyPolynomial::factor_degrees() const {
  std::vector<int> out;
  if (identically_zero) return out;
  if (affine.degree() > 0) out = distinct_degree_profile(radical(affine));
  if (infinity_multiplicity > 0) out.push_back(1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> SecancyPolynomial::factor_degrees_with_multiplicity() const {
  std::vector<int> out;
  if (identically_zero) return out;
  // Strip the radical repeatedly: each layer lists the factors of
  // multiplicity at least i.
  UniPoly rest = affine;
  while (rest.degree() > 0) {
    const UniPoly r = radical(rest);
    for (int d : distinct_degree_profile(r)) out.push_back(d);
    rest = rest / r;
  }
  for (int i = 0; i < infinity_multiplicity; ++i) out.push_back(1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Param> SecancyPolynomial::base_roots() const {
  std::vector<Param> out;
  if (identically_zero) return out;
  if (affine.degree() > 0)
    for (const auto& r : roots(affine)) out.push_back(Param::at(r));
  if (infinity_multiplicity > 0) out.push_back(Param::inf());
  return out;
}

LineScan line_scan(const Lagrangian& A, const Pencil& pencil, std::size_t target, const ScanOptions& opts) {
  if (target < 1 || target > 10) throw InvalidInput("target stratum must be in [1, 10]");
  const Field f = pencil.field();
  if (!(A.field() == f)) throw InvalidInput("Lagrangian and pencil are over different fields");
  const std::size_t s = 11 - target;
  LineScan scan;
  scan.kind = pencil.kind;
  scan.target = target;
  scan.exhaustive = opts.mode == ScanMode::Exhaustive || (opts.mode == ScanMode::Auto && f.order() <= (1u << 16));

  if (scan.exhaustive) {
    const auto params = all_params(f);
    scan.strata = parallel_map(params.size(), opts.jobs,
                               [&](std::size_t i) { return stratum(A, pencil.kind, pencil.datum_at(params[i])); });
    scan.min_stratum = *std::min_element(scan.strata.begin(), scan.strata.end());
    scan.max_stratum = *std::max_element(scan.strata.begin(), scan.strata.end());
    for (std::size_t i = 0; i < params.size(); ++i)
      if (scan.strata[i] >= target) scan.hits.push_back(params[i]);
  }

  const PairingPencil pp = pairing_pencil(A.subspace(), pencil);
  const PairingPencil pq = pairing_pencil(A.subspace(), swapped(pencil));
  Rng rng(opts.seed);
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    SecancyPolynomial sec;
    const UniPoly g = minor_gcd(pp, s, opts.minors, rng);
    if (g.is_zero()) {
      sec.identically_zero = true;
    } else {
      const UniPoly h = minor_gcd(pq, s, opts.minors, rng);
      sec.affine = g;
      sec.infinity_multiplicity = h.is_zero() ? 0 : h.zero_order();
      if (h.is_zero()) {
        // Cannot happen for the same pencil; treat as a bad draw.
        continue;
      }
    }
    bool ok = true;
    if (scan.exhaustive) {
      if (sec.identically_zero) ok = scan.hits.size() == f.order() + 1;
      else ok = sec.base_roots() == scan.hits;
    } else if (sec.identically_zero) {
      for (const auto& t : {Param::at(f.zero()), Param::inf()})
        if (stratum(A, pencil.kind, pencil.datum_at(t)) < target) ok = false;
    } else {
      for (const auto& t : sec.base_roots())
        if (stratum(A, pencil.kind, pencil.datum_at(t)) < target) ok = false;
      if (ok) scan.hits = sec.base_roots();
    }
    if (ok) {
      scan.secancy = sec;
      scan.redraws = attempt;
      return scan;
    }
  }
  throw Degenerate("secancy polynomial inconsistent with the rank oracle after " + std::to_string(opts.retries) +
                   " redraws (arithmetic degeneracy)");
}

GLine random_gline(Field f, Rng& rng) {
  for (;;) {
    std::vector<Vec> pv;
    for (int i = 0; i < 4; ++i) pv.push_back(random_vec(f, kDimW, rng));
    const Subspace P = Subspace::span(f, kDimW, pv);
    if (P.dim() != 4) continue;
    const Subspace V = Subspace::span(f, kDimW, {P.random_element(rng), P.random_element(rng)});
    if (V.dim() != 2) continue;
    return GLine(V, P);
  }
}

Pencil random_pencil(Field f, FamilyKind kind, Rng& rng) {
  if (kind == FamilyKind::T) return Pencil::T(random_gline(f, rng));
  for (;;) {
    Vec a = random_vec(f, kDimW, rng), b = random_vec(f, kDimW, rng);
    if (Subspace::span(f, kDimW, {a, b}).dim() != 2) continue;
    return kind == FamilyKind::F ? Pencil::F(a, b) : Pencil::Fdual(a, b);
  }
}

namespace {

// X_A points on the i-th random pencil of a sampling run.
std::vector<SamplePoint> pencil_samples(const Lagrangian& A, std::uint64_t seed, std::size_t i) {
  Rng rng(Rng::derive(seed, i));
  const Field f = A.field();
  const Pencil pen = random_pencil(f, FamilyKind::F, rng);
  ScanOptions opts;
  opts.mode = ScanMode::Fast;
  opts.seed = rng.next();
  const LineScan scan = line_scan(A, pen, 1, opts);
  std::vector<Param> ts = scan.hits;
  if (scan.secancy.identically_zero) ts = {Param::at(f.random(rng))};
  std::vector<SamplePoint> out;
  for (const auto& t : ts) {
    const Vec v = normalize_projective(pen.datum_at(t)[0]);
    out.push_back({v, stratum(A, FamilyKind::F, {v})});
  }
  return out;
}

constexpr std::size_t kSampleChunk = 32;

}  // namespace

SamplePoint sample_on_X(const Lagrangian& A, std::uint64_t seed, std::size_t pencil_budget) {
  std::optional<SamplePoint> fallback;
  for (std::size_t i = 0; i < pencil_budget; ++i) {
    for (const auto& sp : pencil_samples(A, seed, i)) {
      if (sp.k == 1) return sp;
      if (!fallback) fallback = sp;
    }
  }
  if (fallback) return *fallback;
  throw Degenerate("no point of X_A found within the pencil budget");
}

std::vector<SamplePoint> sample_many_on_X(const Lagrangian& A, std::uint64_t seed, std::size_t count,
                                          std::size_t jobs) {
  std::vector<SamplePoint> out;
  std::size_t base = 0;
  const std::size_t budget = 20 * count + 1000;
  while (out.size() < count) {
    if (base > budget) throw Degenerate("pencil budget exhausted while sampling X_A");
    const auto chunk =
        parallel_map(kSampleChunk, jobs, [&](std::size_t i) { return pencil_samples(A, seed, base + i); });
    for (const auto& pts : chunk)
      for (const auto& sp : pts) out.push_back(sp);
    base += kSampleChunk;
  }
  out.resize(count);
  return out;
}

SexticResult sextic_interpolate(const Lagrangian& A, const SexticOptions& opts) {
  const std::size_t need = monomials(6).size() + opts.margin;
  const auto pts = sample_many_on_X(A, Rng::derive(opts.seed, 0), need, opts.jobs);
  std::vector<Vec> vs;
  for (const auto& sp : pts) vs.push_back(sp.v);
  const auto interp = interpolate_form(vs, 6, opts.margin);
  SexticResult res;
  res.f = interp.form;
  res.rows = interp.rows;
  res.nullity = interp.nullity;
  if (opts.validation > 0) {
    const auto fresh = sample_many_on_X(A, Rng::derive(opts.seed, 1), opts.validation, opts.jobs);
    for (const auto& sp : fresh)
      if (!res.f.eval(sp.v).is_zero()) ++res.validation_failures;
    res.validated = fresh.size();
  }
  return res;
}

Lagrangian embed(const Lagrangian& A, const Field& target) {
  if (A.field() == target) return A;
  return Lagrangian(A.subspace().embed(target), A.provenance());
}

Subspace tangent_plane_pairing(const Lagrangian& A, const Vec& p) {
  const Field f = p.at(0).field();
  const Lagrangian Ae = embed(A, f);
  const Subspace meet = Ae.subspace().intersect(family_F(p));
  if (meet.dim() != 2) throw InvalidInput("tangent plane needs a point of stratum exactly 2");
  std::vector<MultiVector> g;
  for (const auto& k : meet.basis_vectors()) {
    auto b = divide(p, MultiVector(3, k));
    if (!b) throw InternalError("element of F_p is not divisible by p");
    g.push_back(*b);
  }
  const MultiVector pv = MultiVector::vector(p);
  std::vector<Vec> rows;
  const std::pair<std::size_t, std::size_t> pairs[] = {{0, 0}, {0, 1}, {1, 1}};
  for (auto [i, j] : pairs) rows.push_back(five_form_covector(wedge(g[i], wedge(pv, g[j]))));
  return Subspace::span(f, kDimW, kernel(Matrix::from_rows(f, rows, kDimW)));
}

TangentPlane tangent_plane_D2(const Lagrangian& A, const MultiPoly& f, const Vec& p) {
  const Field F = p.at(0).field();
  const MultiPoly fe = f.field() == F ? f : f.embed(F);
  const auto ker = kernel(fe.hessian_at(p));
  TangentPlane tp;
  tp.hessian_rank = kDimW - ker.size();
  if (tp.hessian_rank != 3)
    throw Degenerate("Hessian rank " + std::to_string(tp.hessian_rank) + " at a corank-2 point (expected 3)");
  tp.plane = Subspace::span(F, kDimW, ker);
  tp.contains_point = tp.plane.contains(p);
  const Subspace other = tangent_plane_pairing(A, p);
  tp.methods_agree = other == tp.plane;
  if (!tp.methods_agree) throw InternalError("Hessian and pairing tangent planes disagree");
  return tp;
}

GenericityReport genericity_probe(const Lagrangian& A, std::size_t trials, std::uint64_t seed, std::size_t jobs) {
  struct Trial {
    bool f = false, fd = false, t = false;
    std::size_t classified = 0, decomposable = 0, omega = 0;
  };
  const Field f = A.field();
  auto tally = [](Trial& tr, OrbitType o) {
    ++tr.classified;
    if (o == OrbitType::Decomposable) ++tr.decomposable;
    if (o == OrbitType::OmegaOpen) ++tr.omega;
  };
  const auto results = parallel_map(trials, jobs, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    Trial tr;
    ScanOptions opts;
    opts.mode = ScanMode::Fast;
    opts.seed = rng.next();
    const Pencil pf = random_pencil(f, FamilyKind::F, rng);
    const auto s3 = line_scan(A, pf, 3, opts);
    tr.f = s3.secancy.identically_zero || !s3.hits.empty();
    const auto s1 = line_scan(A, pf, 1, opts);
    std::vector<Param> ts = s1.hits;
    if (s1.secancy.identically_zero) ts = {Param::at(f.random(rng))};
    for (const auto& t : ts) {
      const Vec v = pf.datum_at(t)[0];
      const Subspace meet = A.subspace().intersect(family_F(v));
      if (meet.dim() == 0) continue;
      const Vec x = meet.random_element(rng);
      if (!is_zero(x)) tally(tr, classify(MultiVector(3, x)));
    }
    const auto sd = line_scan(A, random_pencil(f, FamilyKind::Fdual, rng), 3, opts);
    tr.fd = sd.secancy.identically_zero || !sd.hits.empty();
    const auto st = line_scan(A, random_pencil(f, FamilyKind::T, rng), 4, opts);
    tr.t = st.secancy.identically_zero || !st.hits.empty();
    const Vec x = A.subspace().random_element(rng);
    if (!is_zero(x)) tally(tr, classify(MultiVector(3, x)));
    return tr;
  });
  GenericityReport rep;
  rep.trials = trials;
  for (const auto& tr : results) {
    rep.F_hits += tr.f;
    rep.Fdual_hits += tr.fd;
    rep.T_hits += tr.t;
    rep.points_classified += tr.classified;
    rep.decomposable_hits += tr.decomposable;
    rep.omega_open_hits += tr.omega;
  }
  for (const auto& w : A.provenance().witnesses) {
    const OrbitType o = classify(MultiVector(3, w));
    ++rep.points_classified;
    if (o == OrbitType::Decomposable) ++rep.decomposable_hits;
    if (o == OrbitType::OmegaOpen) ++rep.omega_open_hits;
  }
  return rep;
}

}  // namespace epw
