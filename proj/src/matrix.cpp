#include "adestab/matrix.hpp"

#include "adestab/errors.hpp"

#include <utility>

namespace adestab {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RationalVector>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalVector RatMatrix::row(std::size_t i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RationalVector RatMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != 0) s += (*this)(i, j) * v[j];
    }
    out[i] = s;
  }
  return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product size mismatch");
  RatMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational RatMatrix::bilinear(const RationalVector& v, const RationalVector& w) const {
  if (v.size() != rows_ || w.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "bilinear form size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    Rational row_sum = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != 0) row_sum += (*this)(i, j) * w[j];
    }
    s += v[i] * row_sum;
  }
  return s;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead_row, j));
    }
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead_row, j);
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

}  // namespace

RationalVector solve(const RatMatrix& a, const RationalVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve expects a square system");
  RatMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) {
    throw Error(ErrorKind::SingularMatrix, "singular system");
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<RationalVector> nullspace(const RatMatrix& a) {
  RatMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(a.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace {

void swap_sym(RatMatrix& s, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
  for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
}

// Congruence: row_a += row_b, col_a += col_b.
void add_sym(RatMatrix& s, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < s.cols(); ++j) s(a, j) += s(b, j);
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, a) += s(i, b);
}

// Schur complement step on pivot k: clears row and column k below the
// diagonal. When `basis` is given the same row operations are applied to it.
void eliminate_sym(RatMatrix& s, std::size_t k, RatMatrix* basis) {
  const std::size_t n = s.rows();
  const Rational pivot = s(k, k);
  const RationalVector pivot_row = s.row(k);
  for (std::size_t i = k + 1; i < n; ++i) {
    if (pivot_row[i] == 0) continue;
    const Rational f = pivot_row[i] / pivot;
    for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * pivot_row[j];
    s(i, k) = 0;
    s(k, i) = 0;
    if (basis != nullptr) {
      for (std::size_t j = 0; j < n; ++j) (*basis)(i, j) -= f * (*basis)(k, j);
    }
  }
}

}  // namespace

Inertia inertia(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw Error(ErrorKind::DimensionMismatch, "inertia needs a symmetric matrix");
  RatMatrix s = sym;
  const std::size_t n = s.rows();
  Inertia out;
  for (std::size_t k = 0; k < n; ++k) {
    if (s(k, k) == 0) {
      std::size_t swap_with = n;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (s(j, j) != 0) { swap_with = j; break; }
      }
      if (swap_with != n) {
        swap_sym(s, k, swap_with);
      } else {
        std::size_t partner = n;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (s(k, j) != 0) { partner = j; break; }
        }
        if (partner == n) {
          ++out.zero;
          continue;
        }
        add_sym(s, k, partner);  // s(k,k) becomes 2 s(k,partner)
      }
    }
    const Rational pivot = s(k, k);
    eliminate_sym(s, k, nullptr);
    if (pivot > 0) ++out.positive; else ++out.negative;
  }
  return out;
}

DefinitenessResult check_negative_definite(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw Error(ErrorKind::DimensionMismatch, "definiteness check needs a symmetric matrix");
  const std::size_t n = sym.rows();
  RatMatrix s = sym;
  RatMatrix basis = RatMatrix::identity(n);
  DefinitenessResult out;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = s(k, k);
    out.pivots.push_back(pivot);
    if (pivot >= 0) {
      out.witness = basis.row(k);
      return out;
    }
    eliminate_sym(s, k, &basis);
  }
  out.negative_definite = true;
  return out;
}

}  // namespace adestab
