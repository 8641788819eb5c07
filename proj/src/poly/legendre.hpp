// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "numerics/matrix.hpp"

namespace gibbs::poly {

using numerics::cplx;
using numerics::dd;
using numerics::Matrix;

// Orthonormal Legendre basis Pbar_k = sqrt((2k+1)/2) P_k on [-1, 1].
double legendre_orthonormal(int k, double x);
// Pbar_0(x), ..., Pbar_n(x).
std::vector<double> legendre_orthonormal_all(int n, double x);

// Polynomial sum_k coeffs[k] Pbar_k with complex coefficients (real
// polynomials are the common case; reconstructions of complex data are not).
struct LegendrePoly {
  std::vector<cplx> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx operator()(double x) const;
};

// CSV with columns k,re,im.
void write_legendre_csv(const LegendrePoly& p, std::ostream& os);

// Fourier coefficients of Pbar_0..Pbar_n for |j| <= m, as a (2m+1) x (n+1)
// matrix (row j+m). Entry (j,k) = sqrt(2k+1) (-i)^k j_k(pi j), j != 0, and
// delta_{k0} for j = 0.
Matrix<cplx> legendre_fourier_matrix(int n, int m);

// Same matrix by Gauss-Legendre quadrature of Pbar_k(x) exp(-i j pi x).
Matrix<cplx> legendre_fourier_matrix_quadrature(int n, int m);

// Real matrix R with legendre_fourier_matrix = R diag((-i)^k). Unit-modulus
// column scaling leaves singular values unchanged.
template <class T>
Matrix<T> legendre_fourier_matrix_real(int n, int m);

// Throws NumericalError if the Bessel and quadrature paths differ by more
// than tol anywhere.
void check_legendre_fourier_consistency(int n, int m, double tol = 1e-11);

inline constexpr int kMaxEndpointDegree = 60;

// Coefficients b_1..b_n of ptilde(t) = sum_k b_k t^k with
// phat_j = (-1)^j ptilde(1/j) for j != 0, and hat_p0 = phat_0.
struct TPolyCoeffs {
  std::vector<cplx> b;  // b[k-1] holds b_k
  cplx hat_p0{0.0};

  int degree() const { return static_cast<int>(b.size()); }
  cplx eval(double t) const;
  // Fourier coefficient phat_j of the underlying polynomial.
  cplx fourier_coefficient(int j) const;
};

TPolyCoeffs endpoint_correspondence(const LegendrePoly& p);

// Derivative P_k^{(r)}(1) of the classical (unnormalised) Legendre polynomial.
double legendre_derivative_at_one(int k, int r);

// T_q(M(x)) with M the affine map of [a, b] onto [-1, 1].
double eval_chebyshev_shifted(int q, double a, double b, double x);

// P(t) = t * T*_q(t^2) * prod_{i=1..q} (t^2 - 1/i^2), with T*_q the Chebyshev
// polynomial of [1/m^2, 1/(q+1)^2]. Degree n = 4q+1. Only the factored form
// is evaluated.
class WitnessPoly {
 public:
  WitnessPoly(int q, int m);

  int q() const { return q_; }
  int m() const { return m_; }
  int degree() const { return 4 * q_ + 1; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double operator()(double t) const;
  double chebyshev_factor(double s) const;

  // Monomial coefficients b_1..b_n of P; only for q <= 2 (n <= 9).
  TPolyCoeffs monomial_coefficients() const;

 private:
  int q_;
  int m_;
  double lo_;
  double hi_;
};

WitnessPoly build_witness(int q, int m);

}  // namespace gibbs::poly
