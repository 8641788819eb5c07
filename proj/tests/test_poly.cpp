// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "numerics/error.hpp"
#include "numerics/quadrature.hpp"
#include "poly/legendre.hpp"

using namespace gibbs;
using namespace gibbs::poly;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

double pbar_oracle(int k, double x) { return std::sqrt((2.0 * k + 1.0) / 2.0) * std::legendre(k, x); }

// (1/sqrt2) int f(x) e^{-i j pi x} dx on one global Gauss-Legendre rule,
// accumulated in long double.
template <class F>
cplx fourier_oracle(F f, int j, int nodes = 600) {
  const auto rule = numerics::gauss_legendre(nodes);
  long double re = 0.0L, im = 0.0L;
  for (int i = 0; i < nodes; ++i) {
    const long double arg = -std::numbers::pi_v<long double> * j * rule.nodes[i];
    const cplx v = f(rule.nodes[i]);
    const long double w = rule.weights[i];
    re += w * (v.real() * std::cos(arg) - v.imag() * std::sin(arg));
    im += w * (v.real() * std::sin(arg) + v.imag() * std::cos(arg));
  }
  return cplx(static_cast<double>(re), static_cast<double>(im)) / kSqrt2;
}

// Monomial coefficients of the classical P_k by the three-term recurrence.
std::vector<long double> legendre_monomial(int k) {
  std::vector<long double> p0{1.0L}, p1{0.0L, 1.0L};
  if (k == 0) return p0;
  for (int l = 1; l < k; ++l) {
    std::vector<long double> p2(l + 2, 0.0L);
    for (int i = 0; i <= l; ++i) p2[i + 1] += (2.0L * l + 1.0L) * p1[i] / (l + 1.0L);
    for (int i = 0; i < l; ++i) p2[i] -= static_cast<long double>(l) * p0[i] / (l + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST_CASE("orthonormal Legendre values") {
  for (int k = 0; k <= 40; ++k)
    for (double x : {-1.0, -0.73, 0.0, 0.2, 0.91, 1.0}) CHECK(legendre_orthonormal(k, x) == doctest::Approx(pbar_oracle(k, x)).epsilon(1e-13).scale(1.0));
  auto all = legendre_orthonormal_all(12, 0.37);
  REQUIRE(all.size() == 13);
  for (int k = 0; k <= 12; ++k) CHECK(all[k] == doctest::Approx(legendre_orthonormal(k, 0.37)).epsilon(1e-15));
  CHECK_THROWS_AS(legendre_orthonormal(-1, 0.0), InputError);
}

TEST_CASE("orthonormality and coefficient norm") {
  const auto rule = numerics::gauss_legendre(40);
  for (int k = 0; k <= 15; ++k)
    for (int l = 0; l <= 15; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * legendre_orthonormal(k, rule.nodes[i]) * legendre_orthonormal(l, rule.nodes[i]);
      CHECK(s == doctest::Approx(k == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-13));
    }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  LegendrePoly p;
  for (int k = 0; k <= 10; ++k) p.coeffs.emplace_back(g(rng), g(rng));
  double l2 = 0.0, cn = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) l2 += rule.weights[i] * std::norm(p(rule.nodes[i]));
  for (auto c : p.coeffs) cn += std::norm(c);
  CHECK(std::sqrt(l2) == doctest::Approx(std::sqrt(cn)).epsilon(1e-12));
}

TEST_CASE("Legendre-Fourier matrix entries") {
  auto a = legendre_fourier_matrix(3, 4);
  REQUIRE(a.rows() == 9);
  REQUIRE(a.cols() == 4);
  CHECK(std::abs(a(4, 0) - 1.0) < 1e-15);
  for (int j = 1; j <= 4; ++j) {
    CHECK(std::abs(a(4 + j, 0)) < 1e-15);
    CHECK(std::abs(a(4 - j, 0)) < 1e-15);
  }
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(a(4, k)) < 1e-15);
  const cplx e11 = a(5, 1);
  CHECK(e11.real() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(e11.imag() == doctest::Approx(-std::sqrt(3.0) / kPi).epsilon(1e-14));
  CHECK(e11.imag() == doctest::Approx(-0.5513289).epsilon(1e-7));
  CHECK_THROWS_AS(legendre_fourier_matrix(-1, 2), InputError);
  CHECK_THROWS_AS(legendre_fourier_matrix(2, -1), InputError);
}

TEST_CASE("Legendre-Fourier matrix against an independent quadrature") {
  const int n = 20, m = 30;
  auto a = legendre_fourier_matrix(n, m);
  for (int k = 0; k <= n; ++k)
    for (int j = -m; j <= m; ++j) {
      cplx ref = fourier_oracle([k](double x) { return cplx(pbar_oracle(k, x)); }, j);
      INFO("k=" << k << " j=" << j);
      CHECK(std::abs(a(j + m, k) - ref) < 1e-11);
    }
  auto q = legendre_fourier_matrix_quadrature(n, m);
  double worst = 0.0;
  for (std::size_t j = 0; j < a.rows(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) worst = std::max(worst, std::abs(a(j, k) - q(j, k)));
  CHECK(worst < 1e-11);
  CHECK_NOTHROW(check_legendre_fourier_consistency(40, 200));
}

TEST_CASE("Legendre-Fourier matrix parity structure") {
  // Pbar_k has parity (-1)^k, so column k is (-i)^k times a real vector.
  auto a = legendre_fourier_matrix(9, 12);
  auto r = legendre_fourier_matrix_real<double>(9, 12);
  for (int k = 0; k <= 9; ++k) {
    const cplx phase = std::pow(cplx(0.0, -1.0), k);
    for (int j = -12; j <= 12; ++j) {
      CHECK(std::abs(a(j + 12, k) - phase * r(j + 12, k)) < 1e-15);
      const double sym = (k % 2 == 0) ? 1.0 : -1.0;
      CHECK(r(-j + 12, k) == doctest::Approx(sym * r(j + 12, k)).scale(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("classical Legendre derivatives at one") {
  for (int k = 0; k <= 12; ++k) {
    auto c = legendre_monomial(k);
    for (int r = 0; r <= k + 1; ++r) {
      long double d = 0.0L;
      for (int i = r; i <= k; ++i) {
        long double f = 1.0L;
        for (int s = 0; s < r; ++s) f *= static_cast<long double>(i - s);
        d += c[i] * f;
      }
      INFO("k=" << k << " r=" << r);
      CHECK(legendre_derivative_at_one(k, r) == doctest::Approx(static_cast<double>(d)).epsilon(1e-12).scale(1.0));
    }
    CHECK(legendre_derivative_at_one(k, 1) == doctest::Approx(k * (k + 1) / 2.0));
  }
}

TEST_CASE("endpoint correspondence examples") {
  LegendrePoly x{{0.0, std::sqrt(2.0 / 3.0)}};
  auto bx = endpoint_correspondence(x);
  REQUIRE(bx.degree() == 1);
  CHECK(std::abs(bx.b[0] - cplx(0.0, kSqrt2 / kPi)) < 1e-15);
  for (int j = 1; j <= 5; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(bx.fourier_coefficient(j) - cplx(0.0, sign * kSqrt2 / (j * kPi))) < 1e-15);
  }

  LegendrePoly c{{cplx(2.5), 0.0, 0.0}};
  auto bc = endpoint_correspondence(c);
  for (auto b : bc.b) CHECK(std::abs(b) < 1e-15);
  CHECK(std::abs(bc.hat_p0 - 2.5) < 1e-15);

  // x^2 = (sqrt2/3) Pbar_0 + (2/3) sqrt(2/5) Pbar_2
  LegendrePoly x2{{kSqrt2 / 3.0, 0.0, (2.0 / 3.0) * std::sqrt(2.0 / 5.0)}};
  auto b2 = endpoint_correspondence(x2);
  REQUIRE(b2.degree() == 2);
  CHECK(std::abs(b2.b[0]) < 1e-15);
  CHECK(std::abs(b2.b[1] - 2.0 * kSqrt2 / (kPi * kPi)) < 1e-15);
  CHECK(std::abs(b2.hat_p0 - kSqrt2 / 3.0) < 1e-15);

  LegendrePoly big;
  big.coeffs.assign(kMaxEndpointDegree + 2, cplx(0.0));
  CHECK_THROWS_AS(endpoint_correspondence(big), InputError);
}

TEST_CASE("endpoint correspondence reproduces Fourier coefficients") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 * trial + 2;
    LegendrePoly p;
    for (int k = 0; k <= d; ++k) p.coeffs.emplace_back(g(rng), trial % 2 ? g(rng) : 0.0);
    auto t = endpoint_correspondence(p);
    CHECK(std::abs(t.fourier_coefficient(0) - fourier_oracle([&](double x) { return p(x); }, 0)) < 1e-13);
    for (int j = 1; j <= 50; ++j)
      for (int s : {1, -1}) {
        const cplx ref = fourier_oracle([&](double x) { return p(x); }, s * j);
        INFO("degree=" << d << " j=" << s * j);
        CHECK(std::abs(t.fourier_coefficient(s * j) - ref) <= 1e-9 * std::abs(ref) + 1e-14);
      }
  }
}

TEST_CASE("shifted Chebyshev") {
  const double a = 0.01, b = 0.25;
  for (int q = 0; q <= 7; ++q) {
    CHECK(eval_chebyshev_shifted(q, a, b, a) == doctest::Approx(q % 2 ? -1.0 : 1.0).epsilon(1e-14));
    CHECK(eval_chebyshev_shifted(q, a, b, b) == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : {0.02, 0.1, 0.2}) {
      const double y = (2.0 * x - a - b) / (b - a);
      CHECK(eval_chebyshev_shifted(q, a, b, x) == doctest::Approx(std::cos(q * std::acos(y))).scale(1.0).epsilon(1e-13));
    }
    for (double x : {0.0, -0.5, 0.3, 2.0}) {
      const double y = (2.0 * x - a - b) / (b - a);
      const double ref = std::cosh(q * std::acosh(std::abs(y))) * ((y < 0 && q % 2) ? -1.0 : 1.0);
      CHECK(eval_chebyshev_shifted(q, a, b, x) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  for (int q : {1, 3, 10, 25})
    for (double delta : {1e-6, 1e-3, 0.1, 1.0}) {
      // y = 1 + delta on [-1, 1]
      const double v = eval_chebyshev_shifted(q, -1.0, 1.0, 1.0 + delta);
      CHECK(v > 0.5 * std::pow(1.0 + std::sqrt(2.0 * delta), q));
    }
  CHECK_THROWS_AS(eval_chebyshev_shifted(2, 1.0, 1.0, 0.5), InputError);
}

TEST_CASE("witness polynomial") {
  for (int q = 1; q <= 6; ++q)
    for (int m : {q + 2, q + 5, 40}) {
      auto w = build_witness(q, m);
      CHECK(w.degree() == 4 * q + 1);
      CHECK(w.lo() == doctest::Approx(1.0 / (double(m) * m)));
      CHECK(w.hi() == doctest::Approx(1.0 / (double(q + 1) * (q + 1))));
      CHECK(std::abs(w.chebyshev_factor(1.0 / (double(m) * m))) == doctest::Approx(1.0).epsilon(1e-12));
      double scale = 0.0;
      for (int i = 1; i <= 200; ++i) scale = std::max(scale, std::abs(w(i / 200.0)));
      for (int j = 2; j <= q; ++j) {
        INFO("q=" << q << " m=" << m << " j=" << j);
        CHECK(std::abs(w(1.0 / j)) <= 1e-12 * scale);
      }
      for (double t : {0.013, 0.2, 0.77, 1.0}) CHECK(w(-t) == doctest::Approx(-w(t)).epsilon(1e-15));
      CHECK(w(0.0) == 0.0);
    }
  CHECK_THROWS_AS(build_witness(3, 4), InputError);
  CHECK_THROWS_AS(build_witness(0, 4), InputError);
}

TEST_CASE("witness degree by interpolation") {
  for (int q = 1; q <= 3; ++q) {
    auto w = build_witness(q, q + 4);
    const int np = 4 * q + 3;
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    MatL v(np, np);
    VecL y(np);
    for (int i = 0; i < np; ++i) {
      const long double t = std::cos(std::numbers::pi_v<long double> * (i + 0.5L) / np);
      long double pw = 1.0L;
      for (int k = 0; k < np; ++k, pw *= t) v(i, k) = pw;
      y(i) = w(static_cast<double>(t));
    }
    VecL c = v.fullPivLu().solve(y);
    const long double lead = std::abs(c(4 * q + 1));
    INFO("q=" << q);
    CHECK(lead > 1e-3L * c.cwiseAbs().maxCoeff());
    CHECK(std::abs(c(4 * q + 2)) < 1e-9L * c.cwiseAbs().maxCoeff());
    for (int k = 0; k < np; k += 2) CHECK(std::abs(c(k)) < 1e-9L * c.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("witness monomial expansion") {
  for (int q = 1; q <= 2; ++q)
    for (int m : {q + 2, 10, 50}) {
      auto w = build_witness(q, m);
      auto b = w.monomial_coefficients();
      REQUIRE(b.degree() == 4 * q + 1);
      double bsum = 0.0;
      for (auto bk : b.b) bsum += std::abs(bk);
      for (double t : {1.0, 0.5, 1.0 / 3.0, 0.1, 0.02}) {
        CHECK(std::abs(b.eval(t) - w(t)) <= 1e-14 * bsum);
        CHECK(std::abs(b.eval(t).imag()) == 0.0);
      }
    }
  CHECK_THROWS_AS(build_witness(3, 10).monomial_coefficients(), InputError);
}

TEST_CASE("Legendre CSV") {
  std::ostringstream os;
  write_legendre_csv(LegendrePoly{{cplx(1.0), cplx(0.0, -2.0)}}, os);
  const std::string s = os.str();
  CHECK(s.find("k,re,im") != std::string::npos);
  CHECK(s.find("\n1,") != std::string::npos);
}
