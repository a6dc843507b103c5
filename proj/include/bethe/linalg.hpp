#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bethe/scalar.hpp"

namespace bethe {

// Dense row-major matrix over an exact or floating field. Elimination
// routines treat an entry as zero exactly (Rational) or below a tolerance
// relative to the largest entry of the input (Complex).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_magnitude() const {
    double m = 0.0;
    for (const T& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& ail = a(i, l);
        if (ScalarTraits<T>::is_zero(ail, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
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
std::vector<T> multiply(const Matrix<T>& m, std::span<const T> x) {
  std::vector<T> y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

inline constexpr double kDefaultRelativeTolerance = 1e-11;

template <class T>
struct Echelon {
  Matrix<T> reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivot_cols;  // one per nonzero row, ascending
  int swap_parity = 0;                  // row swaps performed (mod 2)
};

/// Gauss-Jordan elimination with partial pivoting by magnitude.
template <class T>
Echelon<T> row_reduce(Matrix<T> m, double rel_tol = kDefaultRelativeTolerance) {
  const double tol = rel_tol * std::max(1.0, m.max_magnitude());
  Echelon<T> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (ScalarTraits<T>::is_zero(m(i, c), tol)) continue;
      const double mag = magnitude(m(i, c));
      if (best == m.rows() || (!ScalarTraits<T>::exact && mag > best_mag)) {
        best = i;
        best_mag = mag;
        if (ScalarTraits<T>::exact) break;
      }
    }
    if (best == m.rows()) {
      for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = T(0);
      continue;
    }
    if (best != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(r, j));
      out.swap_parity ^= 1;
    }
    const T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const T factor = m(i, c);
      if (ScalarTraits<T>::is_zero(factor, 0.0)) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m, double rel_tol = kDefaultRelativeTolerance) {
  return row_reduce(m, rel_tol).pivot_cols.size();
}

/// Basis of the right null space {x : m x = 0}.
template <class T>
std::vector<std::vector<T>> kernel(const Matrix<T>& m, double rel_tol = kDefaultRelativeTolerance) {
  const Echelon<T> e = row_reduce(m, rel_tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double best_mag = -1.0;
    for (std::size_t i = c; i < n; ++i) {
      if (ScalarTraits<T>::exact) {
        if (!ScalarTraits<T>::is_zero(m(i, c), 0.0)) {
          best = i;
          break;
        }
      } else if (magnitude(m(i, c)) > best_mag) {
        best = i;
        best_mag = magnitude(m(i, c));
      }
    }
    if (best == n || ScalarTraits<T>::is_zero(m(best, c), 0.0)) return T(0);
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(best, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const T factor = m(i, c) * inv;
      if (ScalarTraits<T>::is_zero(factor, 0.0)) continue;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Inverse of a square matrix; throws PreconditionViolation when singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m, double rel_tol = kDefaultRelativeTolerance) {
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  const Echelon<T> e = row_reduce(aug, rel_tol);
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
    throw PreconditionViolation("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Solves the square system m x = rhs.
template <class T>
std::vector<T> solve(const Matrix<T>& m, std::span<const T> rhs,
                     double rel_tol = kDefaultRelativeTolerance) {
  const std::size_t n = m.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  const Echelon<T> e = row_reduce(aug, rel_tol);
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
    throw PreconditionViolation("matrix is singular");
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
  return x;
}

template <class T>
double norm2(std::span<const T> v) {
  double s = 0.0;
  for (const T& x : v) {
    const double m = magnitude(x);
    s += m * m;
  }
  return std::sqrt(s);
}

}  // namespace bethe
