#include "epw/incidence.hpp"

#include <algorithm>
#include <numeric>

#include "epw/error.hpp"
#include "epw/parallel.hpp"

namespace epw {

namespace {

std::vector<Vec> complete_basis(const Subspace& S, std::size_t want) {
  const Field f = S.field();
  Subspace acc = S;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < S.ambient() && out.size() < want; ++i) {
    const Vec e = unit_vec(f, S.ambient(), i);
    if (acc.contains(e)) continue;
    out.push_back(e);
    acc = acc.sum(Subspace::span(f, S.ambient(), {e}));
  }
  return out;
}

MultiVector wedge_vecs(const Vec& a, const Vec& b) { return wedge(MultiVector::vector(a), MultiVector::vector(b)); }

int field_degree_of(const FieldElem& r) {
  const int e = r.field().degree();
  for (int d = 1; d < e; ++d) {
    if (e % d != 0) continue;
    FieldElem x = r;
    for (int i = 0; i < d; ++i) x = x.frobenius();
    if (x == r) return d;
  }
  return e;
}

}  // namespace

CubeModel::CubeModel(const Subspace& U, std::optional<std::vector<Vec>> complement) : U_(U) {
  if (U.ambient() != static_cast<std::size_t>(kDimW) || U.dim() != 3) throw InvalidInput("CubeModel needs a 3-space of W");
  const Field f = U.field();
  u_ = U.basis_vectors();
  w_ = complement ? *complement : complete_basis(U, 3);
  if (w_.size() != 3) throw InvalidInput("complement must have three vectors");
  if (U.sum(Subspace::span(f, kDimW, w_)).dim() != static_cast<std::size_t>(kDimW))
    throw InvalidInput("complement does not complete U to a basis of W");
  const MultiVector ud[3] = {wedge_vecs(u_[1], u_[2]), wedge_vecs(u_[2], u_[0]), wedge_vecs(u_[0], u_[1])};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) basis_.push_back(wedge(ud[i], MultiVector::vector(w_[static_cast<std::size_t>(j)])));
  basis_.push_back(wedge(ud[2], MultiVector::vector(u_[2])));
  std::vector<Vec> raw;
  for (const auto& b : basis_) raw.push_back(b.coords());
  solver_ = CoordinateSolver(f, 20, raw);
}

CubeModel::Chart CubeModel::chart(const MultiVector& alpha) const {
  if (alpha.grade() != 3) throw InvalidInput("chart needs a 3-form");
  const auto y = solver_.coordinates(alpha.coords());
  if (!y) throw InvalidInput("3-form is not in T_U");
  Chart ch{Matrix(U_.field(), 3, 3), (*y)[9]};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ch.M(i, j) = (*y)[i * 3 + j];
  return ch;
}

MultiVector CubeModel::from_chart(const Chart& ch) const {
  MultiVector out = ch.c * basis_[9];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out += ch.M(i, j) * basis_[i * 3 + j];
  return out;
}

FieldElem ru_det(const CubeModel& model, const MultiVector& alpha) { return determinant(model.chart(alpha).M); }

std::pair<MultiVector, MultiVector> l_UA(const Lagrangian& A, const Subspace& U) {
  const Subspace meet = A.subspace().intersect(family_T(U));
  if (meet.dim() != 2)
    throw Degenerate("l_UA needs stratum 2 in family T, got " + std::to_string(meet.dim()));
  const auto b = meet.basis_vectors();
  return {MultiVector(3, b[0]), MultiVector(3, b[1])};
}

Pi1Fiber pi1_fiber(const Lagrangian& A, const Subspace& U) {
  const Field f = A.field();
  const CubeModel model(U);
  Pi1Fiber fib;
  std::tie(fib.eta0, fib.eta1) = l_UA(A, U);
  const Matrix M0 = model.chart(fib.eta0).M;
  const Matrix M1 = model.chart(fib.eta1).M;
  std::vector<FieldElem> xs, ys;
  for (std::uint64_t i = 0; i < 4; ++i) {
    xs.push_back(f.element(i));
    ys.push_back(determinant(M0 + xs.back() * M1));
  }
  fib.cubic = interpolate(xs, ys);
  if (fib.cubic.is_zero()) throw Degenerate("cubic of l_UA vanishes identically (l_UA inside R_U)");
  fib.infinity_multiplicity = 3 - fib.cubic.degree();
  fib.degree = 3;
  fib.cubic = fib.cubic.monic();
  int rad_deg = 0;
  if (fib.cubic.degree() > 0) {
    const UniPoly rad = radical(fib.cubic);
    rad_deg = rad.degree();
    fib.factor_degrees = distinct_degree_profile(rad);
  }
  if (fib.infinity_multiplicity > 0) fib.factor_degrees.push_back(1);
  std::sort(fib.factor_degrees.begin(), fib.factor_degrees.end());
  fib.squarefree = rad_deg == fib.cubic.degree() && fib.infinity_multiplicity <= 1;

  int e = 1;
  for (int d : fib.factor_degrees) e = std::lcm(e, d);
  fib.extension = e == 1 ? f : build_extension(f.characteristic(), e);
  const Field X = fib.extension;
  const Lagrangian AX = embed(A, X);
  const MultiVector e0 = fib.eta0.embed(X), e1 = fib.eta1.embed(X);
  auto add_point = [&](const Param& t, int deg) {
    FiberPoint pt;
    pt.t = t;
    pt.field_degree = deg;
    pt.alpha = t.infinity ? e1 : e0 + t.t * e1;
    pt.type = classify(pt.alpha);
    if (pt.type == OrbitType::OmegaOpen) {
      const PhiPair ph = phi_pair(pt.alpha);
      pt.v = ph.v;
      pt.H = ph.H;
      pt.v_on_X = stratum(AX, FamilyKind::F, {pt.v}) >= 1;
      pt.H_on_Xd = stratum(AX, FamilyKind::Fdual, {pt.H}) >= 1;
    }
    fib.points.push_back(std::move(pt));
  };
  if (fib.cubic.degree() > 0)
    for (const auto& r : roots(embed(fib.cubic, X))) add_point(Param::at(r), field_degree_of(r));
  if (fib.infinity_multiplicity > 0) add_point(Param::inf(), 1);
  return fib;
}

MultiVector p_of_v(const Lagrangian& A, const Vec& v) {
  const Subspace meet = A.subspace().intersect(family_F(v));
  if (meet.dim() != 1) throw Degenerate("p_of_v needs stratum 1 in family F, got " + std::to_string(meet.dim()));
  return MultiVector(3, normalize_projective(meet.basis_vectors()[0]));
}

QpModel::QpModel(const MultiVector& p) : p_(p) {
  if (p.grade() != 3 || classify(p) != OrbitType::OmegaOpen) throw InvalidInput("Q_p needs an OmegaOpen point p");
  const Field f = p.field();
  const PhiPair ph = phi_pair(p);
  v_ = ph.v;
  H_ = ph.H;
  beta_ = *divide(v_, p);
  V_ = Subspace::span(f, kDimW, kernel(Matrix::from_rows(f, {H_}, kDimW)));
  if (!V_.contains(v_)) throw InternalError("v is not in V_{v,alpha}");
  for (const auto& b : V_.basis_vectors()) {
    if (Subspace::span(f, kDimW, q_).sum(Subspace::span(f, kDimW, {v_})).contains(b)) continue;
    q_.push_back(b);
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(kDimW); ++i)
    if (!dot(H_, unit_vec(f, kDimW, i)).is_zero()) {
      w0_ = unit_vec(f, kDimW, i);
      break;
    }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) form_.push_back(form_on(q_[i], q_[j]));
}

FieldElem QpModel::form_on(const Vec& a, const Vec& b) const {
  // beta ^ v lies in the 3-forms of V, so beta ^ v ^ a ^ b is a multiple of
  // the generator of the 5-forms of V; w0 is outside V.
  const MultiVector g = wedge(wedge(beta_, MultiVector::vector(v_)), wedge_vecs(a, b));
  return volume(wedge(g, MultiVector::vector(w0_)));
}

Vec QpModel::plucker(const Vec& a, const Vec& b) {
  if (a.size() != 4 || b.size() != 4) throw InvalidInput("chart points have four coordinates");
  Vec out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) out.push_back(a[i] * b[j] - a[j] * b[i]);
  return out;
}

FieldElem QpModel::form_at(const Vec& x) const {
  if (x.size() != 6) throw InvalidInput("Plucker vectors have six coordinates");
  return dot(form_, x);
}

bool QpModel::contains(const Subspace& U) const {
  if (U.ambient() != static_cast<std::size_t>(kDimW) || U.dim() != 3) return false;
  if (!U.contains(v_) || !V_.contains(U)) return false;
  std::vector<Vec> ab;
  Subspace acc = Subspace::span(U.field(), kDimW, {v_});
  for (const auto& b : U.basis_vectors()) {
    if (acc.contains(b)) continue;
    ab.push_back(b);
    acc = acc.sum(Subspace::span(U.field(), kDimW, {b}));
  }
  return form_on(ab[0], ab[1]).is_zero();
}

Vec QpModel::lift(const Vec& c) const {
  if (c.size() != 4) throw InvalidInput("chart points have four coordinates");
  Vec x = zero_vec(v_[0].field(), kDimW);
  for (std::size_t i = 0; i < 4; ++i) x = axpy(x, c[i], q_[i]);
  return x;
}

Subspace QpModel::U_from(const Vec& a, const Vec& b) const {
  return Subspace::span(v_[0].field(), kDimW, {v_, lift(a), lift(b)});
}

QpModel qp_model(const MultiVector& p) { return QpModel(p); }

Psi1Report psi1_fiber_scan(const Lagrangian& A, const Vec& v, const Psi1Options& opts) {
  const Field f = A.field();
  Psi1Report rep;
  rep.p = p_of_v(A, v);
  const QpModel Q(rep.p);
  const auto& L = Q.plucker_form();
  // L(a ^ b) = sum_{i<j} L_ij (a_i b_j - a_j b_i) as a covector in b.
  auto covector = [&](const Vec& a) {
    Vec c = zero_vec(f, 4);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j, ++k) {
        c[j] += L[k] * a[i];
        c[i] -= L[k] * a[j];
      }
    return c;
  };
  constexpr int kBudget = 32;
  rep.lines = parallel_map(opts.lines, opts.jobs, [&](std::size_t i) {
    Rng rng(Rng::derive(opts.seed, i));
    for (int attempt = 0; attempt < kBudget; ++attempt) {
      const Vec a = random_vec(f, 4, rng);
      if (is_zero(a)) continue;
      const Vec c = covector(a);
      if (is_zero(c)) continue;  // a in the radical: Q_p is a cone there
      std::vector<Vec> P = {Q.v()};
      for (const auto& b : kernel(Matrix::from_rows(f, {c}, 4))) P.push_back(Q.lift(b));
      const Subspace PK = Subspace::span(f, kDimW, P);
      const Subspace VK = Subspace::span(f, kDimW, {Q.v(), Q.lift(a)});
      if (PK.dim() != 4 || VK.dim() != 2) continue;
      FiberLine fl;
      fl.line = GLine(VK, PK);
      ScanOptions so;
      so.mode = opts.mode;
      so.seed = rng.next();
      const LineScan sc = line_scan(A, Pencil::T(fl.line), 2, so);
      fl.secancy = sc.secancy;
      fl.hits = sc.hits;
      return fl;
    }
    throw Degenerate("no line inside Q_p found within the retry budget (degenerate p)");
  });
  std::vector<Subspace> seen;
  for (const auto& fl : rep.lines)
    for (const auto& t : fl.hits) {
      Subspace U = fl.line.U_at(t);
      if (std::find(seen.begin(), seen.end(), U) != seen.end()) continue;
      seen.push_back(U);
    }
  rep.fiber = parallel_map(seen.size(), opts.jobs, [&](std::size_t i) {
    FiberU fu;
    fu.U = seen[i];
    fu.stratum = stratum(A, FamilyKind::T, fu.U.basis_vectors());
    fu.contains_v = fu.U.contains(Q.v());
    fu.p_in_T = family_T(fu.U).contains(rep.p.coords());
    fu.on_Qp = Q.contains(fu.U);
    if (fu.stratum == 2 && i < opts.max_roundtrips) {
      fu.roundtrip_checked = true;
      try {
        const Pi1Fiber fib = pi1_fiber(A, fu.U);
        const Vec pe = rep.p.embed(fib.extension).coords();
        for (const auto& pt : fib.points)
          if (projectively_equal(pt.alpha.coords(), pe)) fu.roundtrip = true;
      } catch (const Degenerate&) {
        fu.roundtrip = false;
      }
    }
    return fu;
  });
  return rep;
}

}  // namespace epw
