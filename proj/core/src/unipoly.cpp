#include "epw/unipoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "epw/error.hpp"

namespace epw {

UniPoly::UniPoly(Field f, std::vector<FieldElem> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const FieldElem& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::variable(Field f) { return UniPoly(f, {f.zero(), f.one()}); }

UniPoly UniPoly::monomial(const FieldElem& c, int deg) {
  std::vector<FieldElem> v(static_cast<std::size_t>(deg) + 1, c.field().zero());
  v.back() = c;
  return UniPoly(c.field(), std::move(v));
}

UniPoly UniPoly::from_roots(Field f, const std::vector<FieldElem>& roots) {
  UniPoly r = constant(f.one());
  for (const auto& x : roots) r = r * UniPoly(f, {-x, f.one()});
  return r;
}

FieldElem UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return field_.zero();
  return c_[static_cast<std::size_t>(i)];
}

FieldElem UniPoly::leading() const { return is_zero() ? field_.zero() : c_.back(); }

FieldElem UniPoly::eval(const FieldElem& x) const {
  FieldElem r = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r *= x;
    r += *it;
  }
  return r;
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return UniPoly(field_);
  std::vector<FieldElem> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * field_.from_int(static_cast<std::int64_t>(i)));
  return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

UniPoly UniPoly::reversed(int n) const {
  std::vector<FieldElem> v(static_cast<std::size_t>(n) + 1, field_.zero());
  for (int i = 0; i <= degree() && i <= n; ++i) v[static_cast<std::size_t>(n - i)] = c_[static_cast<std::size_t>(i)];
  return UniPoly(field_, std::move(v));
}

int UniPoly::zero_order() const {
  if (is_zero()) throw InvalidInput("zero_order of zero polynomial");
  int k = 0;
  while (c_[static_cast<std::size_t>(k)].is_zero()) ++k;
  return k;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (!field_.valid()) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (!field_.valid()) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  const Field f = a.field_.valid() ? a.field_ : b.field_;
  if (a.is_zero() || b.is_zero()) return UniPoly(f);
  std::vector<FieldElem> r(a.c_.size() + b.c_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(f, std::move(r));
}

UniPoly operator*(const FieldElem& s, const UniPoly& a) {
  std::vector<FieldElem> r(a.c_);
  for (auto& x : r) x *= s;
  return UniPoly(a.field_, std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw InvalidInput("polynomial division by zero");
  if (degree() < d.degree()) return {UniPoly(field_), *this};
  std::vector<FieldElem> rem(c_);
  std::vector<FieldElem> q(static_cast<std::size_t>(degree() - d.degree()) + 1, field_.zero());
  const FieldElem inv = d.leading().inverse();
  const int dd = d.degree();
  for (int i = degree(); i >= dd; --i) {
    const FieldElem coef = rem[static_cast<std::size_t>(i)] * inv;
    if (coef.is_zero()) continue;
    q[static_cast<std::size_t>(i - dd)] = coef;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {UniPoly(field_, std::move(q)), UniPoly(field_, std::move(rem))};
}

UniPoly UniPoly::powmod(std::uint64_t e, const UniPoly& m) const {
  UniPoly result = constant(field_.one()) % m;
  UniPoly base = *this % m;
  while (e != 0) {
    if (e & 1) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

bool UniPoly::is_irreducible() const {
  const int n = degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const UniPoly f = monic();
  const UniPoly t = variable(field_);
  const std::uint64_t q = field_.order();
  // Rabin: t^(q^n) == t mod f, and gcd(t^(q^(n/r)) - t, f) == 1 for primes r | n.
  std::vector<UniPoly> frob{t % f};
  for (int i = 1; i <= n; ++i) frob.push_back(frob.back().powmod(q, f));
  if (!(frob[static_cast<std::size_t>(n)] == t % f)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    if (gcd(frob[static_cast<std::size_t>(n / r)] - t, f).degree() != 0) return false;
  }
  return true;
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c.to_string();
    if (i > 0) os << "*t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly radical(const UniPoly& f) {
  if (f.is_zero()) throw InvalidInput("radical of zero polynomial");
  const UniPoly m = f.monic();
  if (m.degree() <= 0) return m;
  const UniPoly d = m.derivative();
  const Field F = m.field();
  if (d.is_zero()) {
    // m(t) = h(t^p): take p-th roots of the coefficients of h.
    const std::uint32_t p = F.characteristic();
    const std::uint64_t root_exp = F.order() / p;  // x -> x^(q/p) inverts Frobenius
    std::vector<FieldElem> h;
    for (int i = 0; i <= m.degree(); i += static_cast<int>(p)) h.push_back(m.coeff(i).pow(root_exp));
    return radical(UniPoly(F, std::move(h)));
  }
  const UniPoly g = gcd(m, d);
  if (g.degree() == 0) return m;
  const UniPoly w = m / g;
  const UniPoly r = radical(g);
  return ((w * r) / gcd(w, r)).monic();
}

std::vector<FieldElem> roots_by_scan(const UniPoly& f) {
  if (f.is_zero()) throw InvalidInput("roots of zero polynomial");
  std::vector<FieldElem> out;
  const Field F = f.field();
  for (std::uint64_t i = 0; i < F.order(); ++i) {
    const FieldElem x = F.element(i);
    if (f.eval(x).is_zero()) out.push_back(x);
  }
  return out;
}

namespace {

// Splits a monic product of distinct linear factors; odd characteristic.
void split_linear(const UniPoly& g, Rng& rng, std::vector<FieldElem>& out) {
  const int n = g.degree();
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(-g.coeff(0));
    return;
  }
  const Field F = g.field();
  const std::uint64_t half = (F.order() - 1) / 2;
  for (;;) {
    const UniPoly probe(F, {F.random(rng), F.one()});
    const UniPoly h = probe.powmod(half, g) - UniPoly::constant(F.one());
    const UniPoly d = gcd(h, g);
    if (d.degree() > 0 && d.degree() < n) {
      split_linear(d, rng, out);
      split_linear(g / d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FieldElem> roots_by_gcd(const UniPoly& f) {
  if (f.is_zero()) throw InvalidInput("roots of zero polynomial");
  if (f.degree() == 0) return {};
  const UniPoly m = f.monic();
  const Field F = m.field();
  const UniPoly t = UniPoly::variable(F);
  const UniPoly linear_part = gcd(m, t.powmod(F.order(), m) - t);
  std::vector<FieldElem> out;
  Rng rng(0x5eedULL + static_cast<std::uint64_t>(linear_part.degree()));
  split_linear(linear_part, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElem> roots(const UniPoly& f) {
  if (f.field().order() <= (1u << 16)) return roots_by_scan(f);
  return roots_by_gcd(f);
}

std::vector<int> distinct_degree_profile(const UniPoly& squarefree) {
  std::vector<int> degrees;
  UniPoly f = squarefree.monic();
  const Field F = f.field();
  const UniPoly t = UniPoly::variable(F);
  UniPoly h = t % f;
  for (int i = 1; f.degree() >= 2 * i; ++i) {
    h = h.powmod(F.order(), f);
    const UniPoly g = gcd(h - t, f);
    if (g.degree() > 0) {
      for (int j = 0; j < g.degree() / i; ++j) degrees.push_back(i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) degrees.push_back(f.degree());
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

FactorProfile uni_factor_profile(const UniPoly& f) {
  if (f.is_zero()) throw InvalidInput("factor profile of zero polynomial");
  FactorProfile out;
  out.squarefree_part = radical(f);
  out.roots_in_base = roots(out.squarefree_part);
  out.degree_multiset = distinct_degree_profile(out.squarefree_part);
  return out;
}

UniPoly interpolate(const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw InvalidInput("interpolate: mismatched or empty input");
  const Field F = xs.front().field();
  UniPoly result(F);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis = UniPoly::constant(F.one());
    FieldElem denom = F.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly(F, {-xs[j], F.one()});
      denom *= xs[i] - xs[j];
    }
    if (denom.is_zero()) throw InvalidInput("interpolate: repeated abscissa");
    result += (ys[i] / denom) * basis;
  }
  return result;
}

namespace {

std::mutex& embed_mutex() {
  static std::mutex m;
  return m;
}

FieldElem generator_image(const Field& src, const Field& dst) {
  static std::map<std::pair<const FieldDesc*, const FieldDesc*>, FieldElem> cache;
  {
    std::lock_guard lock(embed_mutex());
    auto it = cache.find({src.desc(), dst.desc()});
    if (it != cache.end()) return it->second;
  }
  std::vector<FieldElem> coeffs;
  for (auto c : src.modulus()) coeffs.push_back(dst.from_int(c));
  const auto rs = roots(UniPoly(dst, coeffs));
  if (rs.empty()) throw InternalError("source modulus has no root in target field");
  std::lock_guard lock(embed_mutex());
  cache.emplace(std::make_pair(src.desc(), dst.desc()), rs.front());
  return rs.front();
}

}  // namespace

FieldElem embed(const FieldElem& x, const Field& target) {
  const Field src = x.field();
  if (src == target) return x;
  if (src.characteristic() != target.characteristic() || target.degree() % src.degree() != 0)
    throw InvalidInput("no embedding " + src.describe() + " -> " + target.describe());
  if (src.is_prime_field()) return target.from_int(x.coeff(0));
  const FieldElem a = generator_image(src, target);
  FieldElem r = target.zero();
  FieldElem power = target.one();
  for (int i = 0; i < src.degree(); ++i) {
    r += target.from_int(x.coeff(i)) * power;
    power *= a;
  }
  return r;
}

UniPoly embed(const UniPoly& f, const Field& target) {
  return UniPoly(target, embed(f.coeffs(), target));
}

std::vector<FieldElem> embed(const std::vector<FieldElem>& v, const Field& target) {
  std::vector<FieldElem> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(embed(x, target));
  return out;
}

}  // namespace epw
