// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "poly/legendre.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fourier/coeffs.hpp"
#include "numerics/error.hpp"
#include "numerics/quadrature.hpp"
#include "numerics/special.hpp"

namespace gibbs::poly {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

cplx minus_i_pow(int k) {
  static const cplx table[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  return table[k % 4];
}

void check_nm(int n, int m) {
  if (n < 0 || m < 0) throw InputError("legendre_fourier_matrix: n and m must be >= 0");
  if (n > numerics::kMaxBesselOrder)
    throw InputError("legendre_fourier_matrix: degree " + std::to_string(n) + " exceeds " +
                     std::to_string(numerics::kMaxBesselOrder));
}

}  // namespace

std::vector<double> legendre_orthonormal_all(int n, double x) {
  std::vector<double> out(n + 1);
  // Recurrence directly on the orthonormal family.
  double p_prev = 0.0;
  double p = 1.0 / kSqrt2;
  out[0] = p;
  for (int k = 0; k < n; ++k) {
    double a = std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0)) / (k + 1.0);
    double c = k == 0 ? 0.0 : std::sqrt((2.0 * k + 3.0) / (2.0 * k - 1.0)) * k / (k + 1.0);
    double next = a * x * p - c * p_prev;
    p_prev = p;
    p = next;
    out[k + 1] = p;
  }
  return out;
}

double legendre_orthonormal(int k, double x) {
  if (k < 0) throw InputError("legendre_orthonormal: k must be >= 0");
  return legendre_orthonormal_all(k, x)[k];
}

cplx LegendrePoly::operator()(double x) const {
  if (coeffs.empty()) return 0.0;
  std::vector<double> basis = legendre_orthonormal_all(degree(), x);
  cplx s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * basis[k];
  return s;
}

void write_legendre_csv(const LegendrePoly& p, std::ostream& os) {
  os << "# gibbs " << GIBBS_VERSION << " orthonormal Legendre coefficients degree=" << p.degree()
     << "\n";
  os << "k,re,im\n";
  for (std::size_t k = 0; k < p.coeffs.size(); ++k)
    os << k << ',' << fourier::format_double(p.coeffs[k].real()) << ','
       << fourier::format_double(p.coeffs[k].imag()) << '\n';
}

template <class T>
Matrix<T> legendre_fourier_matrix_real(int n, int m) {
  check_nm(n, m);
  Matrix<T> r(2 * m + 1, n + 1);
  r(m, 0) = T(1.0);
  for (int j = 1; j <= m; ++j) {
    std::vector<dd> jk = numerics::spherical_bessel_sequence_at_pi_multiple(n, j);
    for (int k = 0; k <= n; ++k) {
      dd v = jk[k] * numerics::sqrt(dd(2.0 * k + 1.0));
      T val;
      if constexpr (std::is_same_v<T, dd>)
        val = v;
      else
        val = numerics::to_double(v);
      r(m + j, k) = val;
      r(m - j, k) = (k % 2 == 0) ? val : T(-val);
    }
  }
  return r;
}

template Matrix<double> legendre_fourier_matrix_real<double>(int, int);
template Matrix<dd> legendre_fourier_matrix_real<dd>(int, int);

Matrix<cplx> legendre_fourier_matrix(int n, int m) {
  Matrix<double> r = legendre_fourier_matrix_real<double>(n, m);
  Matrix<cplx> a(r.rows(), r.cols());
  for (std::size_t k = 0; k < r.cols(); ++k) {
    cplx ph = minus_i_pow(static_cast<int>(k));
    for (std::size_t i = 0; i < r.rows(); ++i) a(i, k) = r(i, k) * ph;
  }
  return a;
}

Matrix<cplx> legendre_fourier_matrix_quadrature(int n, int m) {
  check_nm(n, m);
  int nodes = static_cast<int>(std::ceil(0.55 * (kPi * m + n))) + 50;
  const numerics::QuadratureRule& rule = numerics::gauss_legendre_cached(nodes);
  Matrix<cplx> a(2 * m + 1, n + 1);
  for (int i = 0; i < nodes; ++i) {
    double x = rule.nodes[i];
    std::vector<double> basis = legendre_orthonormal_all(n, x);
    for (int j = -m; j <= m; ++j) {
      double phase = std::remainder(static_cast<double>(j) * x, 2.0);
      cplx e = std::polar(rule.weights[i] / kSqrt2, -kPi * phase);
      for (int k = 0; k <= n; ++k) a(j + m, k) += basis[k] * e;
    }
  }
  return a;
}

void check_legendre_fourier_consistency(int n, int m, double tol) {
  Matrix<cplx> a = legendre_fourier_matrix(n, m);
  Matrix<cplx> b = legendre_fourier_matrix_quadrature(n, m);
  for (std::size_t k = 0; k < a.cols(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, k) - b(i, k)) > tol)
        throw NumericalError("legendre_fourier_matrix: Bessel and quadrature paths disagree at j=" +
                             std::to_string(static_cast<int>(i) - m) + ", k=" + std::to_string(k) +
                             " (|diff| = " + std::to_string(std::abs(a(i, k) - b(i, k))) + ")");
}

cplx TPolyCoeffs::eval(double t) const {
  cplx s = 0.0;
  for (int k = degree(); k >= 1; --k) s = (s + b[k - 1]) * t;
  return s;
}

cplx TPolyCoeffs::fourier_coefficient(int j) const {
  if (j == 0) return hat_p0;
  double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * eval(1.0 / j);
}

double legendre_derivative_at_one(int k, int r) {
  if (r > k) return 0.0;
  // D(r+1)/D(r) = (k+r+1)(k-r) / (2(r+1)), D(0) = 1.
  double d = 1.0;
  for (int s = 0; s < r; ++s) d *= (k + s + 1.0) * (k - s) / (2.0 * (s + 1.0));
  return d;
}

TPolyCoeffs endpoint_correspondence(const LegendrePoly& p) {
  const int n = p.degree();
  if (n > kMaxEndpointDegree)
    throw InputError("endpoint_correspondence: degree " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxEndpointDegree));
  TPolyCoeffs out;
  out.hat_p0 = n >= 0 ? p.coeffs[0] : cplx(0.0);
  out.b.assign(std::max(n, 0), cplx(0.0));
  // i^k
  static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (int k = 1; k <= n; ++k) {
    const int r = k - 1;
    // p^{(r)}(1) - p^{(r)}(-1) = sum_l c_l sqrt((2l+1)/2) P_l^{(r)}(1) (1 - (-1)^{l+r}).
    cplx diff = 0.0;
    for (int l = r; l <= n; ++l) {
      if ((l + r) % 2 == 0) continue;
      diff += p.coeffs[l] * (2.0 * std::sqrt((2.0 * l + 1.0) / 2.0) * legendre_derivative_at_one(l, r));
    }
    cplx denom = kSqrt2 * std::pow(kPi, k) * i_pow[k % 4];
    out.b[k - 1] = -diff / denom;
  }
  return out;
}

double eval_chebyshev_shifted(int q, double a, double b, double x) {
  if (!(a < b)) throw InputError("eval_chebyshev_shifted: need a < b");
  if (q < 0) throw InputError("eval_chebyshev_shifted: q must be >= 0");
  double y = (2.0 * x - a - b) / (b - a);
  if (std::abs(y) <= 1.0) {
    double t_prev = 1.0;
    double t = y;
    if (q == 0) return 1.0;
    for (int k = 1; k < q; ++k) {
      double next = 2.0 * y * t - t_prev;
      t_prev = t;
      t = next;
    }
    return t;
  }
  double ay = std::abs(y);
  double s = std::sqrt((ay - 1.0) * (ay + 1.0));
  double big = std::pow(ay + s, q);
  double val = 0.5 * (big + 1.0 / big);
  return (y < 0.0 && q % 2 == 1) ? -val : val;
}

WitnessPoly::WitnessPoly(int q, int m) : q_(q), m_(m) {
  if (q < 1) throw InputError("build_witness: q must be >= 1");
  if (m < q + 2)
    throw InputError("build_witness: m=" + std::to_string(m) + " < q+2 gives a degenerate interval");
  lo_ = 1.0 / (static_cast<double>(m) * m);
  hi_ = 1.0 / ((q + 1.0) * (q + 1.0));
}

double WitnessPoly::chebyshev_factor(double s) const { return eval_chebyshev_shifted(q_, lo_, hi_, s); }

double WitnessPoly::operator()(double t) const {
  double s = t * t;
  double prod = t * chebyshev_factor(s);
  for (int i = 1; i <= q_; ++i) prod *= (s - 1.0 / (static_cast<double>(i) * i));
  return prod;
}

TPolyCoeffs WitnessPoly::monomial_coefficients() const {
  if (q_ > 2) throw InputError("WitnessPoly: monomial expansion is limited to q <= 2");
  // Polynomials in s as ascending coefficient vectors.
  using Poly = std::vector<double>;
  auto mul = [](const Poly& u, const Poly& v) {
    Poly w(u.size() + v.size() - 1, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
    return w;
  };
  // y = M(s) = alpha s + beta
  double alpha = 2.0 / (hi_ - lo_);
  double beta = -(hi_ + lo_) / (hi_ - lo_);
  Poly y = {beta, alpha};
  Poly t_prev = {1.0};
  Poly t = y;
  for (int k = 1; k < q_; ++k) {
    Poly next = mul(y, t);
    for (double& v : next) v *= 2.0;
    for (std::size_t i = 0; i < t_prev.size(); ++i) next[i] -= t_prev[i];
    t_prev = t;
    t = next;
  }
  Poly in_s = t;
  for (int i = 1; i <= q_; ++i) in_s = mul(in_s, Poly{-1.0 / (static_cast<double>(i) * i), 1.0});
  // P(t) = t * in_s(t^2): coefficient of t^{2r+1} is in_s[r].
  TPolyCoeffs out;
  out.b.assign(degree(), cplx(0.0));
  for (std::size_t r = 0; r < in_s.size(); ++r) out.b[2 * r] = in_s[r];
  return out;
}

WitnessPoly build_witness(int q, int m) { return WitnessPoly(q, m); }

}  // namespace gibbs::poly
