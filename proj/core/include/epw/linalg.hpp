#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epw/field.hpp"

namespace epw {

using Vec = std::vector<FieldElem>;

Vec zero_vec(Field f, std::size_t n);
Vec unit_vec(Field f, std::size_t n, std::size_t i);
Vec random_vec(Field f, std::size_t n, Rng& rng);
Vec from_ints(Field f, const std::vector<std::int64_t>& xs);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const FieldElem& s, const Vec& v);
// a + t b
Vec axpy(const Vec& a, const FieldElem& t, const Vec& b);
FieldElem dot(const Vec& a, const Vec& b);
// Scale so the first nonzero entry is 1. The zero vector is returned as is.
Vec normalize_projective(const Vec& v);
bool projectively_equal(const Vec& a, const Vec& b);

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);
  static Matrix random(Field f, std::size_t rows, std::size_t cols, Rng& rng);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  std::vector<Vec> row_vectors() const;
  void set_row(std::size_t i, const Vec& v);

  Matrix transpose() const;
  // Rows of *this followed by rows of `below`.
  Matrix stacked(const Matrix& below) const;
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  // M v
  Vec apply(const Vec& v) const;
  // v^T M
  Vec left_apply(const Vec& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const FieldElem& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix embed(const Field& target) const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

struct RrefResult {
  Matrix rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Fully reduced row echelon form; zero rows are dropped.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis of {x : M x = 0}.
std::vector<Vec> kernel(const Matrix& m);
// Basis of {y : y^T M = 0}.
std::vector<Vec> left_kernel(const Matrix& m);
FieldElem determinant(const Matrix& m);
// Some x with M x = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);

// A linear subspace of F^n stored by its canonical reduced echelon basis,
// so equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient);
  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace whole(Field f, std::size_t ambient);

  Field field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> basis_vectors() const { return basis_.row_vectors(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& s) const;
  // Coefficients of v in the echelon basis; nullopt if v is not in the span.
  std::optional<Vec> coordinates(const Vec& v) const;
  Subspace intersect(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  Subspace embed(const Field& target) const;
  Vec random_element(Rng& rng) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Field field_;
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// Coordinates with respect to a fixed list of independent vectors (not the
// echelon basis). Throws InvalidInput if the vectors are dependent.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  CoordinateSolver(Field f, std::size_t ambient, const std::vector<Vec>& independent);
  std::size_t size() const { return count_; }
  // y with sum y_i v_i = x, or nullopt if x is outside the span.
  std::optional<Vec> coordinates(const Vec& x) const;

 private:
  Field field_;
  std::size_t ambient_ = 0;
  std::size_t count_ = 0;
  Matrix echelon_;    // reduced basis of the span
  Matrix transform_;  // echelon_ = transform_ * (rows v_i)
  std::vector<std::size_t> pivots_;
};

// dim S1 + dim S2 - rank of the stacked bases. Throws InvalidInput on an
// ambient mismatch.
std::size_t intersect_dim(const Subspace& a, const Subspace& b);

}  // namespace epw
