#include "epw/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "epw/error.hpp"
#include "epw/unipoly.hpp"

namespace epw {

namespace {

struct Tables {
  std::array<std::vector<unsigned>, kDimW + 1> masks;
  std::array<std::size_t, 64> index{};

  Tables() {
    // Enumerate subsets as sorted tuples in lexicographic order.
    for (int k = 0; k <= kDimW; ++k) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
          tuples.push_back(cur);
          return;
        }
        for (int i = start; i < kDimW; ++i) {
          cur.push_back(i);
          self(self, i + 1);
          cur.pop_back();
        }
      };
      rec(rec, 0);
      for (const auto& t : tuples) {
        unsigned m = 0;
        for (int i : t) m |= 1u << i;
        index[m] = masks[static_cast<std::size_t>(k)].size();
        masks[static_cast<std::size_t>(k)].push_back(m);
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_grade3(const MultiVector& a) {
  if (a.grade() != 3) throw InvalidInput("expected a 3-form");
}

void check_w(const Vec& v) {
  if (v.size() != kDimW) throw InvalidInput("expected a vector of W (6 coordinates)");
}

}  // namespace

std::size_t grade_dim(int k) {
  if (k < 0 || k > kDimW) throw InvalidInput("grade out of range");
  return tables().masks[static_cast<std::size_t>(k)].size();
}

unsigned subset_mask(int k, std::size_t index) { return tables().masks.at(static_cast<std::size_t>(k)).at(index); }

std::size_t subset_index(unsigned mask) { return tables().index.at(mask); }

int merge_sign(unsigned a, unsigned b) {
  // Count inversions: pairs (i in a, j in b) with i > j.
  int inv = 0;
  for (int j = 0; j < kDimW; ++j)
    if (b & (1u << j)) inv += std::popcount(a & ~((2u << j) - 1));
  return (inv & 1) ? -1 : 1;
}

MultiVector::MultiVector(Field f, int grade) : field_(f), grade_(grade), c_(grade_dim(grade), f.zero()) {}

MultiVector::MultiVector(int grade, Vec coords) : grade_(grade), c_(std::move(coords)) {
  if (c_.size() != grade_dim(grade)) throw InvalidInput("coordinate count does not match grade");
  if (c_.empty()) throw InvalidInput("empty coordinate vector");
  field_ = c_[0].field();
}

MultiVector MultiVector::blade(Field f, std::initializer_list<int> indices) {
  return blade(f, std::vector<int>(indices));
}

MultiVector MultiVector::blade(Field f, const std::vector<int>& indices) {
  const int k = static_cast<int>(indices.size());
  MultiVector r(f, k);
  unsigned mask = 0;
  int sign = 1;
  for (int i : indices) {
    if (i < 1 || i > kDimW) throw InvalidInput("blade index out of range");
    const unsigned bit = 1u << (i - 1);
    if (mask & bit) return r;
    sign *= merge_sign(mask, bit);
    mask |= bit;
  }
  r.c_[subset_index(mask)] = f.from_int(sign);
  return r;
}

MultiVector MultiVector::vector(const Vec& w) {
  check_w(w);
  return MultiVector(1, w);
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
  if (grade_ != o.grade_) throw InvalidInput("grade mismatch in sum");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
  if (grade_ != o.grade_) throw InvalidInput("grade mismatch in difference");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

MultiVector operator*(const FieldElem& s, const MultiVector& a) {
  MultiVector r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

MultiVector MultiVector::embed(const Field& target) const { return MultiVector(grade_, epw::embed(c_, target)); }

std::string MultiVector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (!c_[i].is_one()) os << c_[i].to_string() << "*";
    os << "e";
    const unsigned m = subset_mask(grade_, i);
    for (int j = 0; j < kDimW; ++j)
      if (m & (1u << j)) os << (j + 1);
  }
  if (first) os << "0";
  return os.str();
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (!(a.field() == b.field())) throw InvalidInput("field mismatch in wedge");
  const int k = a.grade() + b.grade();
  if (k > kDimW) throw InvalidInput("wedge grade exceeds 6");
  MultiVector r(a.field(), k);
  const auto& t = tables();
  const auto& ma = t.masks[static_cast<std::size_t>(a.grade())];
  const auto& mb = t.masks[static_cast<std::size_t>(b.grade())];
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (b[j].is_zero() || (ma[i] & mb[j])) continue;
      const FieldElem x = a[i] * b[j];
      auto& slot = r[t.index[ma[i] | mb[j]]];
      if (merge_sign(ma[i], mb[j]) > 0) slot += x;
      else slot -= x;
    }
  }
  return r;
}

FieldElem omega(const Vec& a, const Vec& b) {
  if (a.size() != 20 || b.size() != 20) throw InvalidInput("omega needs two 3-forms");
  const auto& m = tables().masks[3];
  FieldElem s = a[0].field().zero();
  for (std::size_t i = 0; i < 20; ++i) {
    if (a[i].is_zero()) continue;
    const unsigned c = 63u & ~m[i];
    const std::size_t j = tables().index[c];
    if (b[j].is_zero()) continue;
    if (merge_sign(m[i], c) > 0) s += a[i] * b[j];
    else s -= a[i] * b[j];
  }
  return s;
}

FieldElem omega(const MultiVector& a, const MultiVector& b) {
  check_grade3(a);
  check_grade3(b);
  return omega(a.coords(), b.coords());
}

FieldElem volume(const MultiVector& top) {
  if (top.grade() != kDimW) throw InvalidInput("volume needs a 6-form");
  return top[0];
}

Vec five_form_covector(const MultiVector& g) {
  if (g.grade() != 5) throw InvalidInput("expected a 5-form");
  Vec H;
  for (int i = 1; i <= kDimW; ++i) H.push_back(volume(wedge(g, MultiVector::blade(g.field(), {i}))));
  return H;
}

MultiVector contract(const Vec& H, const MultiVector& a) {
  check_w(H);
  if (a.grade() < 1) throw InvalidInput("cannot contract a scalar");
  MultiVector r(a.field(), a.grade() - 1);
  const auto& t = tables();
  const auto& ms = t.masks[static_cast<std::size_t>(a.grade())];
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (a[i].is_zero()) continue;
    int pos = 0;
    for (int j = 0; j < kDimW; ++j) {
      if (!(ms[i] & (1u << j))) continue;
      if (!H[static_cast<std::size_t>(j)].is_zero()) {
        const FieldElem x = H[static_cast<std::size_t>(j)] * a[i];
        auto& slot = r[t.index[ms[i] & ~(1u << j)]];
        if (pos % 2 == 0) slot += x;
        else slot -= x;
      }
      ++pos;
    }
  }
  return r;
}

Matrix wedge_power(const Matrix& g, int k) {
  if (g.rows() != kDimW || g.cols() != kDimW) throw InvalidInput("expected a 6x6 matrix");
  const std::size_t n = grade_dim(k);
  Matrix out(g.field(), n, n);
  std::vector<MultiVector> cols;
  for (std::size_t j = 0; j < kDimW; ++j) cols.push_back(MultiVector::vector(g.col(j)));
  for (std::size_t idx = 0; idx < n; ++idx) {
    const unsigned m = subset_mask(k, idx);
    MultiVector img = MultiVector(g.field(), 0);
    img[0] = g.field().one();
    for (std::size_t j = 0; j < kDimW; ++j)
      if (m & (1u << j)) img = wedge(img, cols[j]);
    for (std::size_t i = 0; i < n; ++i) out(i, idx) = img[i];
  }
  return out;
}

MultiVector apply(const Matrix& g, const MultiVector& a) {
  return MultiVector(a.grade(), wedge_power(g, a.grade()).apply(a.coords()));
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::F: return "F";
    case FamilyKind::Fdual: return "Fdual";
    case FamilyKind::T: return "T";
  }
  return "?";
}

Subspace span_trivectors(Field f, const std::vector<MultiVector>& xs) {
  std::vector<Vec> vs;
  for (const auto& x : xs) {
    check_grade3(x);
    vs.push_back(x.coords());
  }
  return Subspace::span(f, 20, vs);
}

bool is_isotropic(const Subspace& s) {
  if (s.ambient() != 20) throw InvalidInput("isotropy is defined on 3-forms (ambient 20)");
  const auto b = s.basis_vectors();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!omega(b[i], b[j]).is_zero()) return false;
  return true;
}

Subspace family_F(const Vec& v) {
  check_w(v);
  if (is_zero(v)) throw InvalidInput("F_v needs a nonzero vector");
  const Field f = v[0].field();
  const MultiVector mv = MultiVector::vector(v);
  std::vector<MultiVector> gens;
  for (std::size_t i = 0; i < grade_dim(2); ++i) {
    MultiVector b(f, 2);
    b[i] = f.one();
    gens.push_back(wedge(mv, b));
  }
  return span_trivectors(f, gens);
}

Subspace family_Fdual(const Vec& H) {
  check_w(H);
  if (is_zero(H)) throw InvalidInput("F'_H needs a nonzero covector");
  const Field f = H[0].field();
  Matrix row(f, 1, kDimW);
  row.set_row(0, H);
  const auto ker = kernel(row);
  std::vector<MultiVector> gens;
  for (std::size_t a = 0; a < ker.size(); ++a)
    for (std::size_t b = a + 1; b < ker.size(); ++b)
      for (std::size_t c = b + 1; c < ker.size(); ++c)
        gens.push_back(wedge(MultiVector::vector(ker[a]), MultiVector::vector(ker[b]), MultiVector::vector(ker[c])));
  return span_trivectors(f, gens);
}

Subspace family_T(const Subspace& U) {
  if (U.ambient() != kDimW || U.dim() != 3) throw InvalidInput("T_U needs a 3-dimensional subspace of W");
  const Field f = U.field();
  const auto u = U.basis_vectors();
  std::vector<MultiVector> gens;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) {
      const MultiVector uu = wedge(MultiVector::vector(u[a]), MultiVector::vector(u[b]));
      for (int w = 1; w <= kDimW; ++w) gens.push_back(wedge(uu, MultiVector::blade(f, {w})));
    }
  return span_trivectors(f, gens);
}

Subspace family_subspace(FamilyKind kind, const std::vector<Vec>& datum) {
  switch (kind) {
    case FamilyKind::F:
      if (datum.size() != 1) throw InvalidInput("F expects one vector");
      return family_F(datum[0]);
    case FamilyKind::Fdual:
      if (datum.size() != 1) throw InvalidInput("Fdual expects one covector");
      return family_Fdual(datum[0]);
    case FamilyKind::T: {
      if (datum.empty()) throw InvalidInput("T expects a basis of U");
      for (const auto& x : datum) check_w(x);
      return family_T(Subspace::span(datum[0][0].field(), kDimW, datum));
    }
  }
  throw InvalidInput("unknown family kind");
}

std::string to_string(OrbitType t) {
  switch (t) {
    case OrbitType::Zero: return "Zero";
    case OrbitType::Decomposable: return "Decomposable";
    case OrbitType::OmegaOpen: return "OmegaOpen";
    case OrbitType::Generic: return "Generic";
  }
  return "?";
}

Subspace wedge_kernel(const MultiVector& alpha) {
  check_grade3(alpha);
  const Field f = alpha.field();
  Matrix m(f, grade_dim(4), kDimW);
  for (int j = 1; j <= kDimW; ++j) {
    const auto col = wedge(MultiVector::blade(f, {j}), alpha);
    for (std::size_t i = 0; i < grade_dim(4); ++i) m(i, static_cast<std::size_t>(j - 1)) = col[i];
  }
  return Subspace::span(f, kDimW, kernel(m));
}

OrbitType classify(const MultiVector& alpha) {
  check_grade3(alpha);
  if (alpha.is_zero()) return OrbitType::Zero;
  switch (wedge_kernel(alpha).dim()) {
    case 0: return OrbitType::Generic;
    case 1: return OrbitType::OmegaOpen;
    case 3: return OrbitType::Decomposable;
    default: break;
  }
  throw InternalError("3-form with impossible wedge-kernel dimension: " + alpha.to_string());
}

std::optional<MultiVector> divide(const Vec& v, const MultiVector& alpha) {
  check_w(v);
  check_grade3(alpha);
  const Field f = alpha.field();
  const MultiVector mv = MultiVector::vector(v);
  Matrix m(f, 20, grade_dim(2));
  for (std::size_t j = 0; j < grade_dim(2); ++j) {
    MultiVector b(f, 2);
    b[j] = f.one();
    const auto col = wedge(mv, b);
    for (std::size_t i = 0; i < 20; ++i) m(i, j) = col[i];
  }
  auto x = solve(m, alpha.coords());
  if (!x) return std::nullopt;
  return MultiVector(2, *x);
}

PhiPair phi_pair(const MultiVector& alpha) {
  const Subspace K = wedge_kernel(alpha);
  if (alpha.is_zero() || K.dim() != 1) throw InvalidInput("phi_pair needs a 3-form of type OmegaOpen");
  const Vec v = normalize_projective(K.basis().row(0));
  const auto beta = divide(v, alpha);
  if (!beta) throw InternalError("v ^ beta = alpha has no solution although v spans the wedge kernel");
  const MultiVector g = wedge(MultiVector::vector(v), *beta, *beta);
  const Vec H = five_form_covector(g);
  if (is_zero(H)) throw InternalError("v ^ beta ^ beta vanishes for an OmegaOpen form");
  return {v, normalize_projective(H)};
}

}  // namespace epw
