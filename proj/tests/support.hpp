#pragma once

#include <initializer_list>
#include <vector>

#include "epw/exterior.hpp"
#include "epw/linalg.hpp"
#include "epw/multipoly.hpp"
#include "epw/rng.hpp"

namespace epw::test {

inline MultiVector e(const Field& f, std::initializer_list<int> idx) { return MultiVector::blade(f, idx); }

// Standard basis vector e_i of W, 1-based.
inline Vec w(const Field& f, int i) { return unit_vec(f, kDimW, static_cast<std::size_t>(i - 1)); }

inline Subspace span_w(const Field& f, std::initializer_list<int> idx) {
  std::vector<Vec> vs;
  for (int i : idx) vs.push_back(w(f, i));
  return Subspace::span(f, kDimW, vs);
}

inline MultiVector random_mv(const Field& f, int grade, Rng& rng) {
  return MultiVector(grade, random_vec(f, grade_dim(grade), rng));
}

// A random point of the open orbit of Omega, v ^ beta.
inline MultiVector random_omega_open(const Field& f, Rng& rng, Vec* v_out = nullptr) {
  for (;;) {
    const Vec v = random_vec(f, kDimW, rng);
    const MultiVector a = wedge(MultiVector::vector(v), random_mv(f, 2, rng));
    if (classify(a) != OrbitType::OmegaOpen) continue;
    if (v_out) *v_out = v;
    return a;
  }
}

// Dense random form of degree d.
inline MultiPoly random_form(const Field& f, int d, Rng& rng) {
  MultiPoly g(f);
  for (const auto& m : monomials(d)) g.add_term(m, f.random(rng));
  return g;
}

}  // namespace epw::test
