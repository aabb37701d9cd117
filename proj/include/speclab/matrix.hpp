#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "speclab/field.hpp"

namespace speclab {

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n)
    requires std::is_same_v<T, Rational>
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error("matrix shape mismatch in product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw Error("matrix shape mismatch in product");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

/// In-place Gauss-Jordan elimination to reduced row echelon form with the
/// leftmost available pivot in each column. Returns the pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    T inv = inverse(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Rank by forward elimination only.
template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    T inv = inverse(m(row, col));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      T factor = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    ++row;
  }
  return row;
}

/// Kernel basis as rows, itself in reduced row echelon form.
inline Matrix<Rational> kernel_basis(Matrix<Rational> m) {
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix<Rational> basis(free_cols.size(), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(k, free_cols[k]) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(k, pivots[r]) = -m(r, free_cols[k]);
  }
  rref_in_place(basis);
  return basis;
}

inline Rational determinant(Matrix<Rational> m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t p = col;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) return 0;
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    Rational inv = inverse(m(col, col));
    for (std::size_t i = col + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      Rational factor = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

inline Matrix<Rational> inverse(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("inverse of a non-square matrix");
  Matrix<Rational> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error("matrix is singular");
  Matrix<Rational> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

inline Matrix<Rational> scaled(Matrix<Rational> m, const Rational& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
  return m;
}

}  // namespace speclab
