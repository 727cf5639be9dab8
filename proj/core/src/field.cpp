#include "epw/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "epw/error.hpp"
#include "epw/unipoly.hpp"

namespace epw {

namespace {

using Key = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<Key, std::unique_ptr<FieldDesc>>& registry() {
  static std::map<Key, std::unique_ptr<FieldDesc>> r;
  return r;
}

const FieldDesc* intern(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  Key key{p, modulus};
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();
  auto d = std::make_unique<FieldDesc>();
  d->p = p;
  d->k = modulus.empty() ? 1 : static_cast<int>(modulus.size()) - 1;
  for (std::size_t i = 0; i < modulus.size(); ++i) d->modulus[i] = modulus[i];
  d->order = 1;
  for (int i = 0; i < d->k; ++i) d->order *= p;
  const FieldDesc* raw = d.get();
  reg.emplace(std::move(key), std::move(d));
  return raw;
}

void check_prime(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not a prime");
  if (p < 5) throw InvalidInput("characteristic must be at least 5, got " + std::to_string(p));
  if (p >= (1u << 31)) throw InvalidInput("characteristic too large");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  check_prime(p);
  return Field(intern(p, {}));
}

Field Field::with_modulus(std::uint32_t p, std::span<const std::uint32_t> monic_modulus) {
  check_prime(p);
  if (monic_modulus.size() < 2) throw InvalidInput("modulus must have degree >= 1");
  const int k = static_cast<int>(monic_modulus.size()) - 1;
  if (k > kMaxExtension) throw InvalidInput("extension degree above " + std::to_string(kMaxExtension));
  if (monic_modulus.back() != 1) throw InvalidInput("modulus must be monic");
  if (k == 1) return prime(p);
  std::vector<std::uint32_t> m(monic_modulus.begin(), monic_modulus.end());
  for (auto c : m)
    if (c >= p) throw InvalidInput("modulus coefficient not reduced mod p");
  const Field base = prime(p);
  std::vector<FieldElem> coeffs;
  for (auto c : m) coeffs.push_back(base.from_int(c));
  if (!UniPoly(base, coeffs).is_irreducible())
    throw InvalidInput("modulus is reducible over GF(" + std::to_string(p) + ")");
  return Field(intern(p, m));
}

std::vector<std::uint32_t> Field::modulus() const {
  if (d_->k == 1) return {};
  return {d_->modulus.begin(), d_->modulus.begin() + d_->k + 1};
}

FieldElem Field::zero() const { return FieldElem(d_, {}); }

FieldElem Field::one() const {
  FieldElem::Coeffs c{};
  c[0] = 1;
  return FieldElem(d_, c);
}

FieldElem Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(d_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  FieldElem::Coeffs c{};
  c[0] = static_cast<std::uint32_t>(r);
  return FieldElem(d_, c);
}

FieldElem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (static_cast<int>(coeffs.size()) > d_->k) throw InvalidInput("too many coefficients for field element");
  FieldElem::Coeffs c{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % d_->p;
  return FieldElem(d_, c);
}

FieldElem Field::generator() const {
  if (d_->k == 1) return one();
  FieldElem::Coeffs c{};
  c[1] = 1;
  return FieldElem(d_, c);
}

FieldElem Field::element(std::uint64_t index) const {
  FieldElem::Coeffs c{};
  for (int i = 0; i < d_->k; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % d_->p);
    index /= d_->p;
  }
  return FieldElem(d_, c);
}

FieldElem Field::random(Rng& rng) const {
  FieldElem::Coeffs c{};
  for (int i = 0; i < d_->k; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rng.below(d_->p));
  return FieldElem(d_, c);
}

FieldElem Field::random_nonzero(Rng& rng) const {
  for (;;) {
    auto x = random(rng);
    if (!x.is_zero()) return x;
  }
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << d_->p;
  if (d_->k > 1) os << "^" << d_->k;
  os << ")";
  return os.str();
}

Field build_extension(std::uint32_t p, int k) {
  check_prime(p);
  if (k < 1 || k > kMaxExtension)
    throw InvalidInput("extension degree must be in [1, " + std::to_string(kMaxExtension) + "]");
  if (k == 1) return Field::prime(p);
  const Field base = Field::prime(p);
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::vector<std::uint32_t> m(static_cast<std::size_t>(k) + 1);
    std::uint64_t x = n;
    for (int i = 0; i < k; ++i) {
      m[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    m[static_cast<std::size_t>(k)] = 1;
    if (m[0] == 0) continue;  // divisible by t
    std::vector<FieldElem> coeffs;
    for (auto c : m) coeffs.push_back(base.from_int(c));
    if (UniPoly(base, coeffs).is_irreducible()) return Field::with_modulus(p, m);
  }
  throw InternalError("no irreducible polynomial found");
}

FieldElem& FieldElem::mul_ext(const FieldElem& o) {
  const int k = f_->k;
  const std::uint64_t p = f_->p;
  std::array<std::uint64_t, 2 * kMaxExtension> r{};
  for (int i = 0; i < k; ++i) {
    if (c_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < k; ++j)
      r[static_cast<std::size_t>(i + j)] =
          (r[static_cast<std::size_t>(i + j)] +
           static_cast<std::uint64_t>(c_[static_cast<std::size_t>(i)]) * o.c_[static_cast<std::size_t>(j)]) % p;
  }
  for (int d = 2 * k - 2; d >= k; --d) {
    const std::uint64_t lead = r[static_cast<std::size_t>(d)];
    if (lead == 0) continue;
    r[static_cast<std::size_t>(d)] = 0;
    for (int j = 0; j < k; ++j) {
      const std::uint64_t sub = lead * f_->modulus[static_cast<std::size_t>(j)] % p;
      auto& slot = r[static_cast<std::size_t>(d - k + j)];
      slot = (slot + p - sub) % p;
    }
  }
  for (int i = 0; i < k; ++i) c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r[static_cast<std::size_t>(i)]);
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero");
  if (f_->k == 1) {
    std::int64_t a = c_[0], m = f_->p, x0 = 1, x1 = 0;
    while (m != 0) {
      const std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    std::int64_t r = x0 % static_cast<std::int64_t>(f_->p);
    if (r < 0) r += f_->p;
    Coeffs c{};
    c[0] = static_cast<std::uint32_t>(r);
    return FieldElem(f_, c);
  }
  return pow(f_->order - 2);
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem result = Field(f_).one();
  FieldElem base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string FieldElem::to_string() const {
  if (f_->k == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < f_->k; ++i) os << (i ? "," : "") << c_[static_cast<std::size_t>(i)];
  os << "]";
  return os.str();
}

}  // namespace epw
