#pragma once

#include "adestab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace adestab {

/// Dense row-major matrix over the rationals. Sizes here never exceed a few
/// dozen, so no attempt is made at blocking or fraction-free tricks.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;
  RationalVector operator*(const RationalVector& v) const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatMatrix transpose() const;

  bool is_symmetric() const;

  /// v^T M w
  Rational bilinear(const RationalVector& v, const RationalVector& w) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Solves A x = b exactly. Throws SingularMatrix.
RationalVector solve(const RatMatrix& a, const RationalVector& b);

/// Exact inverse by Gauss-Jordan. Throws SingularMatrix.
RatMatrix inverse(const RatMatrix& a);

/// Basis of {x : A x = 0}, one vector per free column of the reduced row
/// echelon form, with a 1 in that free coordinate.
std::vector<RationalVector> nullspace(const RatMatrix& a);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia of a symmetric matrix by exact congruence
/// diagonalization (symmetric pivoting, with the i <- i + k trick when the
/// remaining diagonal vanishes).
Inertia inertia(const RatMatrix& sym);

struct DefinitenessResult {
  bool negative_definite = false;
  /// LDL^T pivots produced before stopping (all < 0 when definite).
  RationalVector pivots;
  /// Vector x with x^T M x = pivot >= 0 when not negative definite.
  std::optional<RationalVector> witness;
};

/// In-order LDL^T elimination; stops at the first pivot >= 0 and returns the
/// corresponding basis vector as a witness.
DefinitenessResult check_negative_definite(const RatMatrix& sym);

}  // namespace adestab
