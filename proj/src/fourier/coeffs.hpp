// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "numerics/matrix.hpp"

namespace gibbs::fourier {

using numerics::cplx;

// Fourier coefficients c_j, |j| <= m, of a function on [-1, 1] under
//   c_j = (1/sqrt2) int_{-1}^{1} f(x) exp(-i j pi x) dx.
class CoeffVec {
 public:
  CoeffVec() = default;
  explicit CoeffVec(int m);
  CoeffVec(int m, std::vector<cplx> values);

  int m() const { return m_; }
  std::size_t size() const { return values_.size(); }
  cplx& operator[](int j) { return values_[j + m_]; }
  const cplx& operator[](int j) const { return values_[j + m_]; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

 private:
  int m_ = 0;
  std::vector<cplx> values_{cplx(0.0)};
};

enum class Family { ExpLayer, RealPole, Runge, Cosine };

// ExpLayer(a): exp(a(x-1)); RealPole(a): 1/(a+1-a x); Runge(a): 1/(1+a^2 x^2);
// Cosine(w): cos(w pi x).
class TestFunction {
 public:
  TestFunction(Family family, double parameter);

  // "exp:100", "realpole:9", "runge:5", "cos:7sqrt2", "cos:9.899".
  static TestFunction parse(const std::string& spec);

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  double operator()(double x) const;
  // Short stable label, e.g. "runge_5", "cos_7sqrt2".
  std::string label() const;
  std::string spec() const;

 private:
  Family family_;
  double parameter_;
  std::string param_text_;
};

// Exact coefficients for |j| <= m: closed forms for ExpLayer and Cosine,
// adaptive panel quadrature for RealPole and Runge.
CoeffVec coeffs_exact(const TestFunction& f, int m);

// Coefficient j of g by composite Gauss-Legendre: max(8, |j|) panels of 16
// nodes rounded up to a power of two, doubled until two estimates agree.
cplx coefficient_by_quadrature(const std::function<cplx(double)>& g, int j);
CoeffVec coeffs_by_quadrature(const std::function<cplx(double)>& g, int m);

cplx evaluate_truncated_series(const CoeffVec& c, double x);

double norm_m(const CoeffVec& c);

// Gauss-Legendre approximation of the L2(-1,1) norm of g.
double norm_l2(const std::function<cplx(double)>& g, int nodes = 1000);

// Parameter of the largest Bernstein ellipse of analyticity; +inf for
// entire functions.
double bernstein_radius(const TestFunction& f);

// CSV with columns j,re,im. Comment lines start with '#'.
void write_coeffs_csv(const CoeffVec& c, std::ostream& os);
void write_coeffs_csv(const CoeffVec& c, const std::string& path);
CoeffVec read_coeffs_csv(std::istream& is);
CoeffVec read_coeffs_csv(const std::string& path);

// Shortest text for a double that round-trips (17 significant digits).
std::string format_double(double v);

}  // namespace gibbs::fourier
