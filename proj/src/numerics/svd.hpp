// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "numerics/matrix.hpp"

namespace gibbs::numerics {

// Thin SVD A = U diag(sigma) V^H with r = min(rows, cols):
// U is rows x r, V is cols x r, both with orthonormal columns.
template <class T>
struct SvdResult {
  std::vector<real_t<T>> sigma;  // descending, non-negative
  Matrix<T> u;
  Matrix<T> v;
};

// Householder QR with column pivoting followed by one-sided Jacobi on the
// triangular factor. Small singular values keep high relative accuracy.
// Throws InputError on non-finite entries or an empty matrix.
template <class T>
SvdResult<T> svd(const Matrix<T>& a);

// Singular values only (skips accumulating U).
template <class T>
std::vector<real_t<T>> singular_values(const Matrix<T>& a);

extern template SvdResult<double> svd(const Matrix<double>&);
extern template SvdResult<cplx> svd(const Matrix<cplx>&);
extern template SvdResult<dd> svd(const Matrix<dd>&);
extern template std::vector<double> singular_values(const Matrix<double>&);
extern template std::vector<double> singular_values(const Matrix<cplx>&);
extern template std::vector<dd> singular_values(const Matrix<dd>&);

// Largest eigenvalue of the symmetric-definite pencil (z, zm), i.e. the
// supremum of x^T z x / x^T zm x. Cholesky reduction and a Jacobi
// eigen-solve carried out in double-double. Square, at most 13 x 13.
double gen_sym_eig_max(const Matrix<double>& z, const Matrix<double>& zm);
double gen_sym_eig_max(const Matrix<dd>& z, const Matrix<dd>& zm);

}  // namespace gibbs::numerics
