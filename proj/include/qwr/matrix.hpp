// Minimal dense matrix over an arbitrary scalar backend, with the linear
// algebra the representation oracle needs (products, Kronecker products,
// nullspaces via Gaussian elimination).
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "qwr/field.hpp"

namespace qwr {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, S fill = S(0))
      : r_(rows), c_(cols), d_(rows * cols, fill) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  S& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
  const S& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix out = a;
    for (size_t k = 0; k < out.d_.size(); ++k) out.d_[k] += b.d_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix out = a;
    for (size_t k = 0; k < out.d_.size(); ++k) out.d_[k] -= b.d_[k];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape");
    Matrix out(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const S& aik = a(i, k);
        if (entry_zero(aik)) continue;
        for (size_t j = 0; j < b.c_; ++j) {
          const S& bkj = b(k, j);
          if (entry_zero(bkj)) continue;
          out(i, j) += aik * bkj;
        }
      }
    return out;
  }
  friend Matrix operator*(const S& s, const Matrix& m) {
    Matrix out = m;
    for (auto& v : out.d_) v *= s;
    return out;
  }

  Matrix transpose() const {
    Matrix out(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != c_) throw std::invalid_argument("matvec shape");
    std::vector<S> out(r_, S(0));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) {
        if (entry_zero((*this)(i, j)) || entry_zero(v[j])) continue;
        out[i] += (*this)(i, j) * v[j];
      }
    return out;
  }

  static Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.r_ * b.r_, a.c_ * b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t j = 0; j < a.c_; ++j) {
        if (entry_zero(a(i, j))) continue;
        for (size_t k = 0; k < b.r_; ++k)
          for (size_t l = 0; l < b.c_; ++l) {
            if (entry_zero(b(k, l))) continue;
            out(i * b.r_ + k, j * b.c_ + l) = a(i, j) * b(k, l);
          }
      }
    return out;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : d_) {
      double a = std::abs(to_double_of(v));
      if (a > m) m = a;
    }
    return m;
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<S> d_;

  static bool entry_zero(const S& v) {
    if constexpr (std::is_same_v<S, double>) {
      return v == 0.0;
    } else {
      return v.is_zero();
    }
  }

  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  static double to_double_of(const S& v) {
    if constexpr (std::is_same_v<S, double>) {
      return v;
    } else {
      return v.to_double();
    }
  }
};

// Nullspace basis of m via Gaussian elimination.  For the exact backend the
// pivot test is exact; for floats a pivot below tol (relative to the largest
// entry in the matrix) counts as zero.
template <class F>
std::vector<std::vector<typename F::S>> nullspace(const F& field,
                                                  Matrix<typename F::S> m,
                                                  double tol = 1e-10) {
  using S = typename F::S;
  const size_t R = m.rows(), C = m.cols();
  double scale = m.max_abs();
  if (scale == 0) scale = 1;
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < C && row < R; ++col) {
    // Pick the largest available pivot in this column.
    size_t best = row;
    double best_mag = -1;
    for (size_t i = row; i < R; ++i) {
      double mag = std::abs(F::to_double(m(i, col)));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (F::is_zero(m(best, col), tol * scale)) continue;
    for (size_t j = 0; j < C; ++j) std::swap(m(row, j), m(best, j));
    S inv = S(1) / m(row, col);
    for (size_t j = col; j < C; ++j) m(row, j) *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == row) continue;
      S f = m(i, col);
      if (F::is_zero(f, tol)) continue;
      for (size_t j = col; j < C; ++j) m(i, j) -= f * m(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(C, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<S>> basis;
  for (size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(C, S(0));
    v[free] = S(1);
    for (size_t r = 0; r < pivot_col.size(); ++r)
      v[pivot_col[r]] = S(0) - m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qwr
