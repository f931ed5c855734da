#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jackhilb/rational.hpp"

namespace jackhilb {

/// Dense row-major matrix over the rationals. Sizes here are small (at most a
/// few dozen rows), so plain Gauss-Jordan elimination is all we need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  /// Solves this * X = rhs. Throws std::domain_error if singular.
  Matrix solve(Matrix rhs) const {
    if (rows_ != cols_ || rhs.rows_ != rows_) throw std::domain_error("solve: shape mismatch");
    Matrix a = *this;
    const std::size_t n = rows_;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a(pivot, col) == 0) ++pivot;
      if (pivot == n) throw std::domain_error("solve: singular matrix");
      if (pivot != col) {
        a.swap_rows(pivot, col);
        rhs.swap_rows(pivot, col);
      }
      const Rational inv = 1 / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(col, j) *= inv;
      for (std::size_t j = 0; j < rhs.cols_; ++j) rhs(col, j) *= inv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || a(i, col) == 0) continue;
        const Rational f = a(i, col);
        for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j) rhs(i, j) -= f * rhs(col, j);
      }
    }
    return rhs;
  }

  Matrix inverse() const { return solve(identity(rows_)); }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace jackhilb
