// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "numerics/double_double.hpp"

namespace gibbs::numerics {

using cplx = std::complex<double>;

// Dense column-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  T* col(std::size_t j) { return data_.data() + j * rows_; }
  const T* col(std::size_t j) const { return data_.data() + j * rows_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = T(1.0);
    return I;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Scalar helpers shared by the templated kernels.
inline double conj_of(double x) { return x; }
inline dd conj_of(const dd& x) { return x; }
inline cplx conj_of(const cplx& x) { return std::conj(x); }

inline double abs2_of(double x) { return x * x; }
inline dd abs2_of(const dd& x) { return x * x; }
inline double abs2_of(const cplx& x) { return std::norm(x); }

template <class T> struct real_of { using type = T; };
template <> struct real_of<cplx> { using type = double; };
template <class T> using real_t = typename real_of<T>::type;

inline bool finite_of(double x) { return std::isfinite(x); }
inline bool finite_of(const dd& x) { return isfinite(x); }
inline bool finite_of(const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

template <class T>
Matrix<T> conj_transpose(const Matrix<T>& A) {
  Matrix<T> B(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) B(j, i) = conj_of(A(i, j));
  return B;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& A, const Matrix<T>& B) {
  assert(A.cols() == B.rows());
  Matrix<T> C(A.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    T* c = C.col(j);
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const T b = B(k, j);
      const T* a = A.col(k);
      for (std::size_t i = 0; i < A.rows(); ++i) c[i] += a[i] * b;
    }
  }
  return C;
}

template <class T>
std::vector<T> multiply(const Matrix<T>& A, const std::vector<T>& x) {
  assert(A.cols() == x.size());
  std::vector<T> y(A.rows());
  for (std::size_t k = 0; k < A.cols(); ++k) {
    const T* a = A.col(k);
    const T xk = x[k];
    for (std::size_t i = 0; i < A.rows(); ++i) y[i] += a[i] * xk;
  }
  return y;
}

template <class T>
double frobenius_norm(const Matrix<T>& A) {
  double s = 0.0;
  for (const auto& v : A.data()) s += to_double(abs2_of(v));
  return std::sqrt(s);
}

}  // namespace gibbs::numerics
