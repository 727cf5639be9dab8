#include "epw/linalg.hpp"

#include <utility>

#include "epw/error.hpp"
#include "epw/unipoly.hpp"

namespace epw {

namespace {

// Raw residue arithmetic for prime fields; elimination on uint32 arrays is
// several times faster than going through FieldElem.
struct PrimeOps {
  using T = std::uint32_t;
  std::uint64_t p;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T x) const { return x == 0; }
  T add(T a, T b) const { std::uint64_t s = std::uint64_t{a} + b; return static_cast<T>(s >= p ? s - p : s); }
  T sub(T a, T b) const { return a >= b ? a - b : static_cast<T>(a + p - b); }
  T mul(T a, T b) const { return static_cast<T>(std::uint64_t{a} * b % p); }
  T neg(T a) const { return a == 0 ? 0 : static_cast<T>(p - a); }
  T inv(T a) const {
    std::int64_t x = a, m = static_cast<std::int64_t>(p), x0 = 1, x1 = 0;
    while (m != 0) {
      const std::int64_t q = x / m;
      std::int64_t t = x - q * m;
      x = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    std::int64_t r = x0 % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<T>(r);
  }
  // a - f * b
  T submul(T a, T f, T b) const { return sub(a, mul(f, b)); }
};

struct GenericOps {
  using T = FieldElem;
  Field f;
  T zero() const { return f.zero(); }
  T one() const { return f.one(); }
  bool is_zero(const T& x) const { return x.is_zero(); }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return a.inverse(); }
  T submul(const T& a, const T& f2, const T& b) const { return a - f2 * b; }
};

enum class Mode { Reduced, Determinant };

// Gaussian elimination on a row-major array. Reduced: full RREF with unit
// pivots, returns pivot columns (rows beyond the rank are zero). Determinant:
// forward elimination only, accumulating the determinant in *det.
template <class Ops>
std::vector<std::size_t> eliminate(std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols,
                                   const Ops& ops, Mode mode, typename Ops::T* det) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  bool negate = false;
  if (det) *det = ops.one();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && ops.is_zero(a[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
      negate = !negate;
    }
    T* prow = &a[r * cols];
    if (mode == Mode::Reduced) {
      const T s = ops.inv(prow[c]);
      for (std::size_t j = c; j < cols; ++j) prow[j] = ops.mul(prow[j], s);
    } else {
      *det = ops.mul(*det, prow[c]);
    }
    const T pinv = mode == Mode::Reduced ? ops.one() : ops.inv(prow[c]);
    const std::size_t start = mode == Mode::Reduced ? 0 : r + 1;
    for (std::size_t i = start; i < rows; ++i) {
      if (i == r) continue;
      T* row = &a[i * cols];
      if (ops.is_zero(row[c])) continue;
      const T f = mode == Mode::Reduced ? row[c] : ops.mul(row[c], pinv);
      for (std::size_t j = c; j < cols; ++j)
        if (!ops.is_zero(prow[j])) row[j] = ops.submul(row[j], f, prow[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  if (det) {
    if (r < rows || rows != cols) *det = ops.zero();
    else if (negate) *det = ops.neg(*det);
  }
  return pivots;
}

std::vector<std::uint32_t> to_residues(const Matrix& m) {
  std::vector<std::uint32_t> out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j).coeff(0);
  return out;
}

bool use_prime_path(const Matrix& m) { return m.field().valid() && m.field().is_prime_field(); }

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw InvalidInput("field mismatch");
}

}  // namespace

Vec zero_vec(Field f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v.at(i) = f.one();
  return v;
}

Vec random_vec(Field f, std::size_t n, Rng& rng) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.random(rng));
  return v;
}

Vec from_ints(Field f, const std::vector<std::int64_t>& xs) {
  Vec v;
  v.reserve(xs.size());
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const FieldElem& s, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

Vec axpy(const Vec& a, const FieldElem& t, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector length mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * b[i];
  return r;
}

FieldElem dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty()) throw InvalidInput("vector length mismatch");
  FieldElem s = a[0].field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec normalize_projective(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return scale(x.inverse(), v);
  return v;
}

bool projectively_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  return normalize_projective(a) == normalize_projective(b);
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::random(Field f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(f, rows, cols);
  for (auto& x : m.data_) x = f.random(rng);
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

std::vector<Vec> Matrix::row_vectors() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  if (v.size() != cols_) throw InvalidInput("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) {
    require_same_field(v[j].field(), field_);
    (*this)(i, j) = v[j];
  }
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::stacked(const Matrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (cols_ != below.cols_) throw InvalidInput("column count mismatch");
  require_same_field(field_, below.field_);
  Matrix m = *this;
  m.rows_ += below.rows_;
  m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
  return m;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix m(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw InvalidInput("dimension mismatch in apply");
  Vec r = zero_vec(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Vec Matrix::left_apply(const Vec& v) const {
  if (v.size() != rows_) throw InvalidInput("dimension mismatch in left_apply");
  Vec r = zero_vec(field_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) r[j] += v[i] * (*this)(i, j);
  }
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("dimension mismatch in product");
  Matrix m(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("dimension mismatch in sum");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

Matrix operator*(const FieldElem& s, const Matrix& a) {
  Matrix m = a;
  for (auto& x : m.data_) x *= s;
  return m;
}

Matrix Matrix::embed(const Field& target) const {
  Matrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = epw::embed(data_[i], target);
  return m;
}

RrefResult rref(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  Matrix out(m.field(), 0, cols);
  if (rows == 0 || cols == 0) return {out, pivots};
  if (use_prime_path(m)) {
    auto a = to_residues(m);
    const PrimeOps ops{m.field().characteristic()};
    pivots = eliminate(a, rows, cols, ops, Mode::Reduced, static_cast<std::uint32_t*>(nullptr));
    out = Matrix(m.field(), pivots.size(), cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = m.field().from_int(a[i * cols + j]);
  } else {
    std::vector<FieldElem> a;
    a.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a.push_back(m(i, j));
    const GenericOps ops{m.field()};
    pivots = eliminate(a, rows, cols, ops, Mode::Reduced, static_cast<FieldElem*>(nullptr));
    out = Matrix(m.field(), pivots.size(), cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = a[i * cols + j];
  }
  return {out, pivots};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Matrix& m) {
  const auto r = rref(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x = zero_vec(f, m.cols());
    x[free] = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = -r.rref(i, free);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Vec> left_kernel(const Matrix& m) { return kernel(m.transpose()); }

FieldElem determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const Field f = m.field();
  if (m.rows() == 0) return f.one();
  if (use_prime_path(m)) {
    auto a = to_residues(m);
    std::uint32_t det = 0;
    eliminate(a, m.rows(), m.cols(), PrimeOps{f.characteristic()}, Mode::Determinant, &det);
    return f.from_int(det);
  }
  std::vector<FieldElem> a;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  FieldElem det;
  eliminate(a, m.rows(), m.cols(), GenericOps{f}, Mode::Determinant, &det);
  return det;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw InvalidInput("right-hand side length mismatch");
  const Field f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(f, m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.rref(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const Field f = m.field();
  Matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  const auto r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.rref(i, n + j);
  return inv;
}

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient), basis_(f, 0, ambient) {}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient) throw InvalidInput("vector length does not match ambient dimension");
  Subspace s(f, ambient);
  if (vectors.empty()) return s;
  auto r = rref(Matrix::from_rows(f, vectors, ambient));
  s.basis_ = std::move(r.rref);
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::row_space(const Matrix& m) { return span(m.field(), m.cols(), m.row_vectors()); }

Subspace Subspace::whole(Field f, std::size_t ambient) {
  Subspace s(f, ambient);
  s.basis_ = Matrix::identity(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw InvalidInput("vector length does not match ambient dimension");
  Vec c;
  Vec rest = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const FieldElem x = rest[pivots_[i]];
    c.push_back(x);
    if (!x.is_zero())
      for (std::size_t j = 0; j < ambient_; ++j) rest[j] -= x * basis_(i, j);
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& s) const {
  if (s.ambient_ != ambient_) throw InvalidInput("ambient dimension mismatch");
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!contains(s.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw InvalidInput("ambient dimension mismatch");
  return row_space(basis_.stacked(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw InvalidInput("ambient dimension mismatch");
  if (dim() == 0 || o.dim() == 0) return Subspace(field_, ambient_);
  const Matrix st = basis_.stacked(o.basis_);
  std::vector<Vec> vecs;
  for (const auto& y : left_kernel(st)) {
    Vec x = zero_vec(field_, ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!y[i].is_zero())
        for (std::size_t j = 0; j < ambient_; ++j) x[j] += y[i] * basis_(i, j);
    vecs.push_back(std::move(x));
  }
  return span(field_, ambient_, vecs);
}

Subspace Subspace::embed(const Field& target) const { return row_space(basis_.embed(target)); }

Vec Subspace::random_element(Rng& rng) const {
  Vec x = zero_vec(field_, ambient_);
  for (std::size_t i = 0; i < dim(); ++i) x = axpy(x, field_.random(rng), basis_.row(i));
  return x;
}

CoordinateSolver::CoordinateSolver(Field f, std::size_t ambient, const std::vector<Vec>& independent)
    : field_(f), ambient_(ambient), count_(independent.size()) {
  const std::size_t n = independent.size();
  Matrix aug(f, n, ambient + n);
  for (std::size_t i = 0; i < n; ++i) {
    if (independent[i].size() != ambient) throw InvalidInput("vector length does not match ambient dimension");
    for (std::size_t j = 0; j < ambient; ++j) aug(i, j) = independent[i][j];
    aug(i, ambient + i) = f.one();
  }
  const auto r = rref(aug);
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= ambient))
    throw InvalidInput("coordinate solver needs independent vectors");
  echelon_ = Matrix(f, n, ambient);
  transform_ = Matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ambient; ++j) echelon_(i, j) = r.rref(i, j);
    for (std::size_t j = 0; j < n; ++j) transform_(i, j) = r.rref(i, ambient + j);
  }
  pivots_.assign(r.pivots.begin(), r.pivots.begin() + static_cast<std::ptrdiff_t>(n));
}

std::optional<Vec> CoordinateSolver::coordinates(const Vec& x) const {
  if (x.size() != ambient_) throw InvalidInput("vector length does not match ambient dimension");
  Vec c;
  Vec rest = x;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const FieldElem a = rest[pivots_[i]];
    c.push_back(a);
    if (!a.is_zero())
      for (std::size_t j = 0; j < ambient_; ++j) rest[j] -= a * echelon_(i, j);
  }
  if (!is_zero(rest)) return std::nullopt;
  if (count_ == 0) return Vec{};
  return transform_.left_apply(c);
}

std::size_t intersect_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw InvalidInput("ambient dimension mismatch");
  if (a.dim() == 0 || b.dim() == 0) return 0;
  return a.dim() + b.dim() - rank(a.basis().stacked(b.basis()));
}

}  // namespace epw
