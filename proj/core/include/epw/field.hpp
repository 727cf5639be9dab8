#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "epw/rng.hpp"

namespace epw {

inline constexpr int kMaxExtension = 4;

// Immutable description of GF(p^k). Instances are interned for the life of
// the process, so elements can hold a plain pointer to their field.
struct FieldDesc {
  std::uint32_t p = 0;
  int k = 1;
  // Monic modulus, coefficients low to high; modulus[k] == 1. Unused when k == 1.
  std::array<std::uint32_t, kMaxExtension + 1> modulus{};
  std::uint64_t order = 0;
};

class FieldElem;

// Lightweight handle to an interned FieldDesc. Two handles compare equal iff
// they describe the same (p, modulus).
class Field {
 public:
  Field() = default;

  static Field prime(std::uint32_t p);
  // GF(p^k) with the given monic modulus (low to high, length k + 1).
  // Throws InvalidInput if p is not a prime >= 5 or the modulus is reducible.
  static Field with_modulus(std::uint32_t p, std::span<const std::uint32_t> monic_modulus);

  bool valid() const { return d_ != nullptr; }
  const FieldDesc* desc() const { return d_; }
  std::uint32_t characteristic() const { return d_->p; }
  int degree() const { return d_->k; }
  std::uint64_t order() const { return d_->order; }
  bool is_prime_field() const { return d_->k == 1; }
  std::vector<std::uint32_t> modulus() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  // The class of the polynomial variable (primitive element of the modulus).
  FieldElem generator() const;
  // Enumeration of all elements: index in [0, order), digits base p.
  FieldElem element(std::uint64_t index) const;
  FieldElem random(Rng& rng) const;
  FieldElem random_nonzero(Rng& rng) const;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

 private:
  explicit Field(const FieldDesc* d) : d_(d) {}
  friend class FieldElem;
  const FieldDesc* d_ = nullptr;
};

bool is_prime(std::uint64_t n);

// Lexicographically first monic irreducible of degree k over GF(p) (ordering
// by the integer sum c_i p^i of the non-leading coefficients). k == 1 yields
// the prime field.
Field build_extension(std::uint32_t p, int k);

class FieldElem {
 public:
  using Coeffs = std::array<std::uint32_t, kMaxExtension>;

  FieldElem() = default;
  FieldElem(const FieldDesc* f, const Coeffs& c) : f_(f), c_(c) {}

  Field field() const { return Field(f_); }
  const FieldDesc* desc() const { return f_; }
  const Coeffs& coeffs() const { return c_; }
  std::uint32_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    for (int i = 0; i < f_->k; ++i)
      if (c_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (int i = 1; i < f_->k; ++i)
      if (c_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }
  // True iff the element lies in the prime subfield.
  bool in_prime_field() const {
    for (int i = 1; i < f_->k; ++i)
      if (c_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  // sum c_i p^i; a total order used for canonical sorting.
  std::uint64_t index() const {
    std::uint64_t r = 0;
    for (int i = f_->k - 1; i >= 0; --i) r = r * f_->p + c_[static_cast<std::size_t>(i)];
    return r;
  }

  FieldElem operator-() const {
    FieldElem r(f_, {});
    for (int i = 0; i < f_->k; ++i) {
      const auto x = c_[static_cast<std::size_t>(i)];
      r.c_[static_cast<std::size_t>(i)] = x == 0 ? 0 : f_->p - x;
    }
    return r;
  }

  FieldElem& operator+=(const FieldElem& o) {
    for (int i = 0; i < f_->k; ++i) {
      auto& x = c_[static_cast<std::size_t>(i)];
      std::uint32_t s = x + o.c_[static_cast<std::size_t>(i)];
      x = s >= f_->p ? s - f_->p : s;
    }
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    for (int i = 0; i < f_->k; ++i) {
      auto& x = c_[static_cast<std::size_t>(i)];
      const auto y = o.c_[static_cast<std::size_t>(i)];
      x = x >= y ? x - y : x + f_->p - y;
    }
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    if (f_->k == 1) {
      c_[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c_[0]) * o.c_[0] % f_->p);
      return *this;
    }
    return mul_ext(o);
  }
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.index() < b.index(); }

  // Throws InvalidInput on zero.
  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;
  // Frobenius x -> x^p.
  FieldElem frobenius() const { return pow(f_->p); }

  std::string to_string() const;

 private:
  FieldElem& mul_ext(const FieldElem& o);

  const FieldDesc* f_ = nullptr;
  Coeffs c_{};
};

}  // namespace epw
