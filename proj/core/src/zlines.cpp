#include "epw/zlines.hpp"

#include <algorithm>
#include <numeric>

#include "epw/error.hpp"
#include "epw/parallel.hpp"

namespace epw {

namespace {

std::vector<Vec> complete_basis(const Subspace& S) {
  const Field f = S.field();
  Subspace acc = S;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < S.ambient(); ++i) {
    const Vec e = unit_vec(f, S.ambient(), i);
    if (acc.contains(e)) continue;
    out.push_back(e);
    acc = acc.sum(Subspace::span(f, S.ambient(), {e}));
  }
  return out;
}

bool same_root_set(const UniPoly& a, int inf_a, const UniPoly& b, int inf_b) {
  if ((inf_a > 0) != (inf_b > 0)) return false;
  const bool ca = a.degree() <= 0, cb = b.degree() <= 0;
  if (ca || cb) return ca && cb;
  return radical(a) == radical(b);
}

}  // namespace

Subspace ZLine::span() const { return Subspace::span(field(), 20, {eta1.coords(), eta2.coords()}); }

ZLine ZLine::embed(const Field& target) const {
  ZLine z = *this;
  z.v1 = epw::embed(v1, target);
  z.v2 = epw::embed(v2, target);
  z.alpha = alpha.embed(target);
  z.eta1 = eta1.embed(target);
  z.eta2 = eta2.embed(target);
  z.H1 = epw::embed(H1, target);
  z.H2 = epw::embed(H2, target);
  z.V = V.embed(target);
  z.P = P.embed(target);
  z.omega12 = epw::embed(omega12, target);
  return z;
}

ZLine zline_validate(const Vec& v1, const Vec& v2, const MultiVector& alpha) {
  if (v1.size() != static_cast<std::size_t>(kDimW) || v2.size() != static_cast<std::size_t>(kDimW))
    throw InvalidInput("z-line vectors must lie in W");
  if (alpha.grade() != 2) throw InvalidInput("alpha must be a 2-form");
  const Field f = alpha.field();
  ZLine z;
  z.v1 = v1;
  z.v2 = v2;
  z.V = Subspace::span(f, kDimW, {v1, v2});
  if (z.V.dim() != 2) throw InvalidInput("dependent v_i");
  const MultiVector w1 = MultiVector::vector(v1), w2 = MultiVector::vector(v2);
  z.alpha = alpha;
  z.eta1 = wedge(w1, alpha);
  z.eta2 = wedge(w2, alpha);
  if (Subspace::span(f, 20, {z.eta1.coords(), z.eta2.coords()}).dim() != 2)
    throw InvalidInput("alpha degenerate: eta_1 and eta_2 are dependent");
  // alpha is defined modulo v1 ^ v2 (it does not change the eta_i); the cube
  // is affine in the shift, so one shift fixes it whenever anything does.
  if (wedge(alpha, alpha, alpha).is_zero()) {
    z.alpha = alpha + wedge(w1, w2);
    z.alpha_shift = 1;
    if (wedge(z.alpha, z.alpha, z.alpha).is_zero()) throw InvalidInput("alpha degenerate: no maximal-rank representative");
  }
  const std::pair<int, int> ratios[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}};
  for (auto [a, b] : ratios) {
    const MultiVector x = f.from_int(a) * z.eta1 + f.from_int(b) * z.eta2;
    const OrbitType o = classify(x);
    if (o == OrbitType::Decomposable) throw InvalidInput("line touches G(3,W)");
    if (o != OrbitType::OmegaOpen) throw InvalidInput("alpha degenerate: pencil leaves Omega");
  }
  z.H1 = phi_pair(z.eta1).H;
  z.H2 = phi_pair(z.eta2).H;
  if (projectively_equal(z.H1, z.H2)) throw InvalidInput("pi_2-image contracted");
  z.P = Subspace::span(f, kDimW, kernel(Matrix::from_rows(f, {z.H1, z.H2}, kDimW)));
  z.omega12 = omega(z.eta1, z.eta2);
  z.isotropic = z.omega12.is_zero();
  return z;
}

Lagrangian lagrangian_through(const ZLine& z, Field f, std::uint64_t seed) {
  if (!(f == z.field())) throw InvalidInput("z-line is over a different field");
  if (!z.isotropic) throw InvalidInput("z-line is not isotropic; no Lagrangian contains it");
  Lagrangian A = random_lagrangian(f, seed, Constraint::contains(z.span()));
  return A;
}

PartialsCheck partials_on_pencil(const MultiPoly& f, const Vec& a, const Vec& b) {
  PartialsCheck pc;
  pc.ran = true;
  const int n = f.total_degree() - 1;
  UniPoly g(a.at(0).field());
  int inf = n;
  bool any = false;
  for (int i = 0; i < kVars; ++i) {
    const UniPoly r = f.partial(i).restrict_to_line(a, b);
    if (r.is_zero()) continue;
    any = true;
    g = gcd(g, r);
    inf = std::min(inf, n - r.degree());
  }
  if (!any) {
    pc.identically_zero = true;
    pc.degree = -1;
    return pc;
  }
  pc.gcd_affine = g;
  pc.infinity_multiplicity = inf;
  pc.degree = g.degree() + inf;
  return pc;
}

BatteryReport four_secant_battery(const ZLine& z, const Lagrangian& A, const BatteryOptions& opts) {
  if (!A.contains(z.eta1) || !A.contains(z.eta2)) throw InvalidInput("z-line is not contained in P(A)");
  auto run = [&](std::string name, const Pencil& pencil, std::size_t base) {
    SubBattery sb;
    sb.name = std::move(name);
    sb.kind = pencil.kind;
    sb.base = base;
    const LineScan s1 = line_scan(A, pencil, base, opts.scan);
    sb.exhaustive = s1.exhaustive;
    sb.min_stratum = s1.exhaustive ? s1.min_stratum : 0;
    sb.all_on_locus = s1.secancy.identically_zero && (!s1.exhaustive || s1.min_stratum >= base);
    const LineScan s2 = line_scan(A, pencil, base + 1, opts.scan);
    sb.secancy = s2.secancy;
    sb.degree = s2.secancy.identically_zero ? -1 : s2.secancy.degree();
    sb.squarefree = !s2.secancy.identically_zero && s2.secancy.squarefree();
    if (!s2.secancy.identically_zero) sb.factor_degrees = s2.secancy.factor_degrees_with_multiplicity();
    return sb;
  };
  BatteryReport rep;
  rep.pencil_W = run("pencil in P(W)", Pencil::F(z.v1, z.v2), 1);
  rep.pencil_Wdual = run("pencil in P(W*)", Pencil::Fdual(z.H1, z.H2), 1);
  rep.line_G = run("line L_l in G(3,W)", Pencil::T(z.L()), 2);
  if (opts.sextic) {
    rep.partials = partials_on_pencil(*opts.sextic, z.v1, z.v2);
    const SecancyPolynomial& s = rep.pencil_W.secancy;
    if (!rep.partials.identically_zero && !s.identically_zero) {
      rep.partials.roots_match =
          same_root_set(rep.partials.gcd_affine, rep.partials.infinity_multiplicity, s.affine, s.infinity_multiplicity);
      rep.partials.equal =
          rep.partials.gcd_affine == s.affine && rep.partials.infinity_multiplicity == s.infinity_multiplicity;
    }
  }
  return rep;
}

RKReduction rk_reduce(const GLine& K) {
  const Field f = K.V().field();
  std::vector<Vec> gens;
  const MultiVector xy = wedge(MultiVector::vector(K.x()), MultiVector::vector(K.y()));
  for (int w = 1; w <= kDimW; ++w) gens.push_back(wedge(xy, MultiVector::blade(f, {w})).coords());
  const auto pb = K.P().basis_vectors();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t k = j + 1; k < 4; ++k)
        gens.push_back(
            wedge(MultiVector::vector(pb[i]), MultiVector::vector(pb[j]), MultiVector::vector(pb[k])).coords());
  RKReduction out;
  out.R = Subspace::span(f, 20, gens);
  if (out.R.dim() != 6) throw Degenerate("R_K has dimension " + std::to_string(out.R.dim()) + ", expected 6");
  out.isotropic = is_isotropic(out.R);
  const Subspace meet = family_T(K.U_at(Param::at(f.zero())))
                            .intersect(family_T(K.U_at(Param::at(f.one()))))
                            .intersect(family_T(K.U_at(Param::inf())));
  out.equals_intersection = meet == out.R;
  out.reduced = ReducedSpace(out.R);
  return out;
}

ReductionReport reduction_identity_check(const Lagrangian& A, const GLine& K, const ReductionOptions& opts) {
  const Field f = A.field();
  const RKReduction rk = rk_reduce(K);
  const ReducedSpace& red = rk.reduced;
  ReductionReport rep;
  rep.c = intersect_dim(A.subspace(), rk.R);
  const Subspace Abar = red.reduce(A.subspace());
  rep.reduced_A_dim = Abar.dim();
  std::vector<Param> params;
  rep.exhaustive = f.order() <= (1u << 16);
  if (rep.exhaustive) {
    for (std::uint64_t i = 0; i < f.order(); ++i) params.push_back(Param::at(f.element(i)));
  } else {
    Rng rng(opts.seed);
    params.push_back(Param::at(f.zero()));
    for (std::size_t i = 0; i < opts.samples; ++i) params.push_back(Param::at(f.random(rng)));
  }
  params.push_back(Param::inf());
  struct Row {
    std::size_t lhs, rhs;
    bool lag;
  };
  const auto rows = parallel_map(params.size(), opts.jobs, [&](std::size_t i) {
    const Subspace T = family_T(K.U_at(params[i]));
    const Subspace Tbar = red.reduce(T);
    Row r;
    r.lhs = intersect_dim(T, A.subspace()) - rep.c;
    r.rhs = intersect_dim(Tbar, Abar);
    r.lag = Tbar.dim() == 4 && red.is_isotropic(Tbar);
    return r;
  });
  rep.checked = params.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].lag) rep.reduced_T_lagrangian = false;
    if (rows[i].lhs != rows[i].rhs) rep.mismatches.push_back({params[i], rows[i].lhs, rows[i].rhs});
  }
  return rep;
}

std::size_t quadric_rank_of_lines(const std::vector<std::pair<Vec, Vec>>& lines) {
  if (lines.empty()) return 0;
  const Field f = lines[0].first.at(0).field();
  std::vector<Vec> rows;
  for (const auto& [a, b] : lines) {
    if (a.size() != 4 || b.size() != 4) throw InvalidInput("quadric test needs lines of a 4-dimensional space");
    for (const Vec& x : {a, b, add(a, b)}) {
      Vec r;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) r.push_back(x[i] * x[j]);
      rows.push_back(std::move(r));
    }
  }
  return rank(Matrix::from_rows(f, rows, 10));
}

TangentQuadricReport tangent_quadric_test(const ZLine& z, const Lagrangian& A, const MultiPoly& f,
                                          const ScanOptions& scan) {
  const Field base = A.field();
  const LineScan s = line_scan(A, Pencil::F(z.v1, z.v2), 2, scan);
  const SecancyPolynomial& sec = s.secancy;
  if (sec.identically_zero || sec.degree() != 4 || !sec.squarefree())
    throw Degenerate("battery (i) does not give four simple secant points");
  TangentQuadricReport rep;
  rep.factor_degrees = sec.factor_degrees();
  int e = 1;
  for (int d : rep.factor_degrees) e = std::lcm(e, d);
  if (e > kMaxExtension) throw Degenerate("secant points need an extension of degree " + std::to_string(e));
  rep.extension_degree = e;
  const Field X = e == 1 ? base : build_extension(base.characteristic(), e);
  const Vec v1 = embed(z.v1, X), v2 = embed(z.v2, X);
  if (sec.affine.degree() > 0)
    for (const auto& r : roots(embed(sec.affine, X))) rep.points.push_back(axpy(v1, r, v2));
  if (sec.infinity_multiplicity > 0) rep.points.push_back(v2);
  if (rep.points.size() != 4) throw InternalError("secant points did not split over the chosen extension");

  std::vector<Vec> frame = {v1, v2};
  for (const auto& c : complete_basis(z.V)) frame.push_back(embed(c, X));
  const CoordinateSolver solver(X, kDimW, frame);
  std::vector<std::pair<Vec, Vec>> lines;
  for (const auto& p : rep.points) {
    const TangentPlane tp = tangent_plane_D2(A, f, p);
    rep.hessian_ranks.push_back(tp.hessian_rank);
    std::vector<Vec> img;
    for (const auto& b : tp.plane.basis_vectors()) {
      const Vec y = *solver.coordinates(b);
      img.emplace_back(y.begin() + 2, y.end());
    }
    const Subspace image = Subspace::span(X, 4, img);
    rep.image_dims.push_back(image.dim());
    if (image.dim() != 2) throw Degenerate("tangent plane contains the projection center");
    const auto ib = image.basis_vectors();
    lines.emplace_back(ib[0], ib[1]);
  }
  rep.rank = quadric_rank_of_lines(lines);
  return rep;
}

}  // namespace epw
