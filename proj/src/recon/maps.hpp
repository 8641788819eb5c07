// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fourier/coeffs.hpp"
#include "poly/legendre.hpp"
#include "recon/solver.hpp"

namespace gibbs::recon {

using fourier::CoeffVec;

enum class Method { IPRM, PLS, FE };
std::string to_string(Method m);
Method parse_method(const std::string& s);

// phi(x) = sum_{|k| <= n} a_k exp(i k pi x / T).
struct ExtensionFn {
  double T = 2.0;
  int n = 0;
  std::vector<cplx> a;  // a[k + n]

  cplx operator()(double x) const;
};

// Least squares over P_{2n} against |j| <= m. The matrix is factored once.
class PolyLsSolver {
 public:
  PolyLsSolver(int n, int m, double cutoff_rel = 0.0);

  poly::LegendrePoly solve(const CoeffVec& c, LsSolveInfo* info = nullptr) const;
  // Legendre coefficients for range coordinates y.
  std::vector<cplx> from_range(const cplx* y) const;

  int n() const { return n_; }
  int m() const { return m_; }
  int degree() const { return 2 * n_; }
  const TruncatedSvdSolver<double>& core() const { return core_; }

 private:
  int n_;
  int m_;
  TruncatedSvdSolver<double> core_;  // real form of the Legendre-Fourier matrix
};

// The unique p in P_{2m} matching all 2m+1 coefficients (no regularisation).
// Throws NumericalError when the square system is numerically singular.
poly::LegendrePoly iprm(const CoeffVec& c, LsSolveInfo* info = nullptr);

// argmin over P_{2n} of the coefficient mismatch, n <= m.
poly::LegendrePoly poly_ls(const CoeffVec& c, int n, LsSolveInfo* info = nullptr);

// Fourier coefficients on [-1,1] of exp(i k pi x / T): sqrt2 sinc(pi (k/T - j)).
// Real; row j+m, column k+n.
Matrix<double> fe_matrix(int n, int m, double T);

// Fourier extension solver. The matrix satisfies F(-j,-k) = F(j,k), so it is
// factored as two half-size blocks acting on even and odd parts.
class FeSolver {
 public:
  FeSolver(int n, int m, double T, double cutoff_rel = kDefaultCutoff);

  ExtensionFn solve(const CoeffVec& c, LsSolveInfo* info = nullptr) const;

  int n() const { return n_; }
  int m() const { return m_; }
  double T() const { return T_; }
  int rank() const { return even_.rank() + odd_.rank(); }
  double cutoff() const { return cutoff_; }
  // Even block: coefficients s_0..s_n of 1, sqrt2 cos(k pi x/T).
  // Odd block: coefficients d_1..d_n of sqrt2 sin(k pi x/T).
  const TruncatedSvdSolver<double>& even() const { return even_; }
  const TruncatedSvdSolver<double>& odd() const { return odd_; }
  // Assembles a_k from even/odd block coefficients.
  ExtensionFn assemble(const std::vector<cplx>& s, const std::vector<cplx>& d) const;

 private:
  int n_;
  int m_;
  double T_;
  double cutoff_;
  TruncatedSvdSolver<double> even_;
  TruncatedSvdSolver<double> odd_;
};

std::pair<ExtensionFn, LsSolveInfo> fourier_extension(const CoeffVec& c, int n, double T,
                                                      double cutoff_rel = kDefaultCutoff);

// L2(-1,1) distance between f and approx on a Gauss-Legendre grid.
double l2_error(const std::function<cplx(double)>& f, const std::function<cplx(double)>& approx,
                int nodes = 1000);
double l2_error(const fourier::TestFunction& f, const std::function<cplx(double)>& approx,
                int nodes = 1000);

}  // namespace gibbs::recon
