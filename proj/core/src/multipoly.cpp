#include "epw/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace epw {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

FieldElem MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const FieldElem& c) {
  if (!field_.valid()) field_ = c.field();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FieldElem MultiPoly::eval(const Vec& x) const {
  if (x.size() != kVars) throw InvalidInput("evaluation point must have 6 coordinates");
  int d = std::max(total_degree(), 0);
  std::array<std::vector<FieldElem>, kVars> pw;
  for (int i = 0; i < kVars; ++i) {
    pw[static_cast<std::size_t>(i)].push_back(field_.one());
    for (int k = 1; k <= d; ++k) pw[static_cast<std::size_t>(i)].push_back(pw[static_cast<std::size_t>(i)].back() * x[static_cast<std::size_t>(i)]);
  }
  FieldElem s = field_.zero();
  for (const auto& [e, c] : terms_) {
    FieldElem m = c;
    for (int i = 0; i < kVars; ++i)
      if (e[static_cast<std::size_t>(i)]) m *= pw[static_cast<std::size_t>(i)][e[static_cast<std::size_t>(i)]];
    s += m;
  }
  return s;
}

MultiPoly MultiPoly::partial(int var) const {
  if (var < 0 || var >= kVars) throw InvalidInput("variable index out of range");
  MultiPoly r(field_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent e2 = e;
    --e2[v];
    r.add_term(e2, c * field_.from_int(e[v]));
  }
  return r;
}

Vec MultiPoly::gradient_at(const Vec& x) const {
  Vec g;
  for (int i = 0; i < kVars; ++i) g.push_back(partial(i).eval(x));
  return g;
}

Matrix MultiPoly::hessian_at(const Vec& x) const {
  Matrix h(field_, kVars, kVars);
  for (int i = 0; i < kVars; ++i) {
    const MultiPoly di = partial(i);
    for (int j = i; j < kVars; ++j) {
      const FieldElem v = di.partial(j).eval(x);
      h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
      h(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
    }
  }
  return h;
}

UniPoly MultiPoly::restrict_to_line(const Vec& a, const Vec& b) const {
  if (a.size() != kVars || b.size() != kVars) throw InvalidInput("line endpoints must have 6 coordinates");
  const int d = std::max(total_degree(), 0);
  std::array<std::vector<UniPoly>, kVars> pw;
  for (std::size_t i = 0; i < kVars; ++i) {
    const UniPoly lin(field_, {a[i], b[i]});
    pw[i].push_back(UniPoly::constant(field_.one()));
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * lin);
  }
  UniPoly r(field_);
  for (const auto& [e, c] : terms_) {
    UniPoly m = UniPoly::constant(c);
    for (std::size_t i = 0; i < kVars; ++i)
      if (e[i]) m = m * pw[i][e[i]];
    r += m;
  }
  return r;
}

MultiPoly MultiPoly::normalized() const {
  if (terms_.empty()) return *this;
  return terms_.begin()->second.inverse() * *this;
}

MultiPoly MultiPoly::embed(const Field& target) const {
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) r.add_term(e, epw::embed(c, target));
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r(a.field_.valid() ? a.field_ : b.field_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e;
      for (std::size_t i = 0; i < kVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const FieldElem& s, const MultiPoly& a) {
  MultiPoly r(a.field_);
  for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
  return r;
}

MultiPoly MultiPoly::variable(Field f, int var) {
  MultiPoly r(f);
  Exponent e{};
  e.at(static_cast<std::size_t>(var)) = 1;
  r.add_term(e, f.one());
  return r;
}

MultiPoly MultiPoly::constant(const FieldElem& c) {
  MultiPoly r(c.field());
  r.add_term(Exponent{}, c);
  return r;
}

MultiPoly MultiPoly::linear(const Vec& c) {
  if (c.size() != kVars) throw InvalidInput("linear form needs 6 coefficients");
  MultiPoly r(c[0].field());
  for (std::size_t i = 0; i < kVars; ++i) {
    Exponent e{};
    e[i] = 1;
    r.add_term(e, c[i]);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string();
    for (std::size_t i = 0; i < kVars; ++i) {
      if (e[i] == 0) continue;
      os << "*x" << i;
      if (e[i] > 1) os << "^" << int{e[i]};
    }
  }
  return os.str();
}

std::vector<Exponent> monomials(int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  Exponent e{};
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == kVars - 1) {
      e[i] = static_cast<std::uint8_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint8_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

Vec eval_monomials(const std::vector<Exponent>& mons, const Vec& x) {
  if (x.size() != kVars) throw InvalidInput("evaluation point must have 6 coordinates");
  if (mons.empty()) return {};
  const Field f = x[0].field();
  int d = 0;
  for (const auto& e : mons)
    for (auto k : e) d = std::max(d, int{k});
  std::array<std::vector<FieldElem>, kVars> pw;
  for (std::size_t i = 0; i < kVars; ++i) {
    pw[i].push_back(f.one());
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * x[i]);
  }
  Vec out;
  out.reserve(mons.size());
  for (const auto& e : mons) {
    FieldElem m = pw[0][e[0]];
    for (std::size_t i = 1; i < kVars; ++i) m *= pw[i][e[i]];
    out.push_back(m);
  }
  return out;
}

InterpolationResult interpolate_form(const std::vector<Vec>& points, int d, std::size_t margin) {
  if (d < 1) throw InvalidInput("form degree must be positive");
  const auto mons = monomials(d);
  const std::size_t need = mons.size() + margin;
  if (points.size() < need)
    throw InvalidInput("interpolation needs at least " + std::to_string(need) + " points, got " +
                       std::to_string(points.size()));
  const Field f = points[0].at(0).field();
  Matrix ev(f, points.size(), mons.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (is_zero(points[i])) throw InvalidInput("interpolation point is zero");
    ev.set_row(i, eval_monomials(mons, points[i]));
  }
  const auto ker = kernel(ev);
  InterpolationResult res;
  res.monomial_count = mons.size();
  res.rows = points.size();
  res.nullity = ker.size();
  if (ker.empty()) throw InterpolationError(0, "no form of degree " + std::to_string(d) + " vanishes on the points");
  if (ker.size() > 1)
    throw InterpolationError(ker.size(), "points do not determine a unique form (nullity " +
                                             std::to_string(ker.size()) + ")");
  MultiPoly g(f);
  for (std::size_t j = 0; j < mons.size(); ++j) g.add_term(mons[j], ker[0][j]);
  res.form = g.normalized();
  return res;
}

}  // namespace epw
