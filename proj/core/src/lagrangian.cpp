#include "epw/lagrangian.hpp"

#include <bit>

#include "epw/error.hpp"

namespace epw {

namespace {

Matrix random_symmetric(Field f, std::size_t n, Rng& rng) {
  Matrix S(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      S(i, j) = f.random(rng);
      S(j, i) = S(i, j);
    }
  return S;
}

// Darboux basis (p_1..p_m, q_1..q_m) of F^{2m} for the form x^T G y,
// starting from a random basis so different seeds give different frames.
std::pair<std::vector<Vec>, std::vector<Vec>> random_darboux(const Matrix& G, Rng& rng) {
  const Field f = G.field();
  const std::size_t n = G.rows();
  auto form = [&](const Vec& x, const Vec& y) { return dot(x, G.apply(y)); };
  const Matrix B = random_invertible(f, n, rng);
  std::vector<Vec> pool = B.row_vectors();
  std::vector<Vec> P, Q;
  while (!pool.empty()) {
    const Vec x = pool.front();
    pool.erase(pool.begin());
    std::size_t k = 0;
    while (k < pool.size() && form(x, pool[k]).is_zero()) ++k;
    if (k == pool.size()) throw InternalError("degenerate form during symplectic Gram-Schmidt");
    const Vec y = scale(form(x, pool[k]).inverse(), pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& z : pool) {
      const FieldElem zq = form(z, y), zp = form(z, x);
      z = axpy(axpy(z, -zq, x), zp, y);
    }
    P.push_back(x);
    Q.push_back(y);
  }
  return {P, Q};
}

}  // namespace

Lagrangian::Lagrangian(Subspace s, Provenance prov) : s_(std::move(s)), prov_(std::move(prov)) {
  if (!is_lagrangian(s_)) throw InvalidInput("subspace is not Lagrangian");
}

bool is_lagrangian(const Subspace& s) {
  if (s.ambient() != 20) throw InvalidInput("Lagrangian subspaces live in the 20-dimensional space of 3-forms");
  return s.dim() == 10 && is_isotropic(s);
}

std::vector<Vec> reference_basis(Field f) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < 20; ++i) {
    const unsigned m = subset_mask(3, i);
    if (std::popcount(m & 7u) >= 2) out.push_back(unit_vec(f, 20, i));
  }
  return out;
}

std::vector<Vec> reference_dual_basis(Field f) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < 20; ++i) {
    const unsigned m = subset_mask(3, i);
    if (std::popcount(m & 7u) < 2) continue;
    const unsigned c = 63u & ~m;
    out.push_back(scale(f.from_int(merge_sign(m, c)), unit_vec(f, 20, subset_index(c))));
  }
  return out;
}

Subspace lagrangian_from_graph(const Matrix& S) {
  if (S.rows() != 10 || S.cols() != 10) throw InvalidInput("graph matrix must be 10x10");
  if (!(S == S.transpose())) throw InvalidInput("graph matrix is not symmetric; its graph is not isotropic");
  const Field f = S.field();
  const auto a = reference_basis(f);
  const auto ad = reference_dual_basis(f);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < 10; ++i) {
    Vec g = a[i];
    for (std::size_t j = 0; j < 10; ++j) g = axpy(g, S(j, i), ad[j]);
    rows.push_back(std::move(g));
  }
  return Subspace::span(f, 20, rows);
}

Matrix random_invertible(Field f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix g = Matrix::random(f, n, n, rng);
    if (rank(g) == n) return g;
  }
}

Lagrangian random_lagrangian(Field f, std::uint64_t seed, const Constraint& c) {
  Rng rng(seed);
  Provenance prov;
  prov.seed = seed;
  if (c.kind == Constraint::Kind::Contains && c.subspace.dim() > 0) {
    const Subspace& R = c.subspace;
    if (R.ambient() != 20) throw InvalidInput("constraint must be a subspace of the 3-forms");
    if (!(R.field() == f)) throw InvalidInput("constraint is over a different field");
    if (R.dim() > 10) throw InvalidInput("constraint dimension exceeds 10");
    if (!is_isotropic(R)) throw InvalidInput("constraint subspace is not isotropic");
    prov.constraint = "contains";
    prov.witnesses = R.basis_vectors();
    if (R.dim() == 10) return Lagrangian(R, prov);
    const ReducedSpace red(R);
    const auto [P, Q] = random_darboux(red.gram(), rng);
    const Matrix S = random_symmetric(f, P.size(), rng);
    std::vector<Vec> rows = R.basis_vectors();
    for (std::size_t i = 0; i < P.size(); ++i) {
      Vec q = P[i];
      for (std::size_t j = 0; j < Q.size(); ++j) q = axpy(q, S(j, i), Q[j]);
      rows.push_back(red.lift(q));
    }
    return Lagrangian(Subspace::span(f, 20, rows), prov);
  }
  Matrix S = random_symmetric(f, 10, rng);
  if (c.kind == Constraint::Kind::ContainsDecomposable) {
    // The first reference vector is e123; clearing its row and column keeps
    // it in the graph.
    for (std::size_t j = 0; j < 10; ++j) S(0, j) = S(j, 0) = f.zero();
    prov.constraint = "contains_decomposable";
  }
  const Subspace graph = lagrangian_from_graph(S);
  const Matrix g = random_invertible(f, kDimW, rng);
  const Matrix g3 = wedge_power(g, 3);
  std::vector<Vec> rows;
  for (const auto& b : graph.basis_vectors()) rows.push_back(g3.apply(b));
  if (c.kind == Constraint::Kind::ContainsDecomposable)
    prov.witnesses.push_back(g3.apply(MultiVector::blade(f, {1, 2, 3}).coords()));
  return Lagrangian(Subspace::span(f, 20, rows), prov);
}

ReducedSpace::ReducedSpace(const Subspace& R) : field_(R.field()), R_(R) {
  if (R.ambient() != 20) throw InvalidInput("reduction is defined on the 3-forms");
  if (!epw::is_isotropic(R)) throw InvalidInput("cannot reduce by a non-isotropic subspace");
  if (R.dim() > 9) throw InvalidInput("reduction needs dim R <= 9");
  const auto rb = R.basis_vectors();
  std::vector<Vec> perp_basis;
  if (rb.empty()) {
    perp_basis = Subspace::whole(field_, 20).basis_vectors();
  } else {
    Matrix m(field_, rb.size(), 20);
    for (std::size_t i = 0; i < rb.size(); ++i)
      for (std::size_t j = 0; j < 20; ++j) m(i, j) = omega(rb[i], unit_vec(field_, 20, j));
    perp_basis = kernel(m);
  }
  perp_ = Subspace::span(field_, 20, perp_basis);
  Subspace acc = R;
  for (const auto& x : perp_.basis_vectors()) {
    if (acc.contains(x)) continue;
    C_.push_back(x);
    acc = acc.sum(Subspace::span(field_, 20, {x}));
  }
  gram_ = Matrix(field_, C_.size(), C_.size());
  for (std::size_t i = 0; i < C_.size(); ++i)
    for (std::size_t j = 0; j < C_.size(); ++j) gram_(i, j) = omega(C_[i], C_[j]);
  if (rank(gram_) != C_.size()) throw InternalError("induced form on R^perp/R is degenerate");
  std::vector<Vec> all = rb;
  all.insert(all.end(), C_.begin(), C_.end());
  solver_ = CoordinateSolver(field_, 20, all);
}

FieldElem ReducedSpace::form(const Vec& x, const Vec& y) const { return dot(x, gram_.apply(y)); }

Vec ReducedSpace::project(const Vec& x) const {
  const auto y = solver_.coordinates(x);
  if (!y) throw InvalidInput("vector is not in R^perp");
  return Vec(y->begin() + static_cast<std::ptrdiff_t>(R_.dim()), y->end());
}

Vec ReducedSpace::lift(const Vec& q) const {
  if (q.size() != C_.size()) throw InvalidInput("quotient coordinate length mismatch");
  Vec x = zero_vec(field_, 20);
  for (std::size_t i = 0; i < q.size(); ++i) x = axpy(x, q[i], C_[i]);
  return x;
}

Subspace ReducedSpace::reduce(const Subspace& S) const {
  const Subspace meet = S.intersect(perp_);
  std::vector<Vec> q;
  for (const auto& x : meet.basis_vectors()) q.push_back(project(x));
  return Subspace::span(field_, C_.size(), q);
}

bool ReducedSpace::is_isotropic(const Subspace& q) const {
  const auto b = q.basis_vectors();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!form(b[i], b[j]).is_zero()) return false;
  return true;
}

ReducedSpace symplectic_reduce(const Subspace& R) { return ReducedSpace(R); }

}  // namespace epw
