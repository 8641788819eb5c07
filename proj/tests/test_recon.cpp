// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "cond/kappa.hpp"
#include "doctest.h"
#include "frame/bnm.hpp"
#include "numerics/error.hpp"
#include "numerics/quadrature.hpp"
#include "recon/maps.hpp"

using namespace gibbs;
using namespace gibbs::recon;
using fourier::TestFunction;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// Coefficients |j| <= m of g on one global Gauss-Legendre rule in long double.
CoeffVec oracle_coeffs(const std::function<cplx(double)>& g, int m, int nodes = 800) {
  const auto rule = numerics::gauss_legendre(nodes);
  CoeffVec c(m);
  for (int j = -m; j <= m; ++j) {
    long double re = 0.0L, im = 0.0L;
    for (int i = 0; i < nodes; ++i) {
      const long double arg = -std::numbers::pi_v<long double> * j * rule.nodes[i];
      const cplx v = g(rule.nodes[i]);
      const long double w = rule.weights[i];
      re += w * (v.real() * std::cos(arg) - v.imag() * std::sin(arg));
      im += w * (v.real() * std::sin(arg) + v.imag() * std::cos(arg));
    }
    c[j] = cplx(static_cast<double>(re), static_cast<double>(im)) / kSqrt2;
  }
  return c;
}

double norm_l2_oracle(const std::function<cplx(double)>& g) {
  const auto rule = numerics::gauss_legendre(1500);
  long double s = 0.0L;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::norm(g(rule.nodes[i]));
  return static_cast<double>(std::sqrt(s));
}

poly::LegendrePoly random_poly(int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  poly::LegendrePoly p;
  for (int k = 0; k <= degree; ++k) p.coeffs.emplace_back(g(rng), g(rng));
  return p;
}

double coeff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double coeff_norm(const std::vector<cplx>& a) { return coeff_distance(a, std::vector<cplx>(a.size())); }

}  // namespace

TEST_CASE("ls_solve examples") {
  numerics::Matrix<double> id(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1.0;
  std::vector<cplx> b{cplx(1.0, 2.0), cplx(-3.0), cplx(0.0, 0.5)};
  LsSolveInfo info;
  auto x = ls_solve(id, b, kDefaultCutoff, &info);
  CHECK(coeff_distance(x, b) < 1e-15);
  CHECK(info.residual_norm < 1e-15);
  CHECK(info.rank_used == 3);

  numerics::Matrix<double> d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-20;
  auto y = ls_solve(d, {cplx(1.0), cplx(1.0)}, 1e-14, &info);
  CHECK(std::abs(y[0] - 1.0) < 1e-15);
  CHECK(std::abs(y[1]) == 0.0);
  CHECK(info.rank_used == 1);
  CHECK(info.svd_cutoff == doctest::Approx(1e-14));
  CHECK(info.residual_norm == doctest::Approx(1.0));

  // consistent overdetermined complex system against Eigen
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  numerics::Matrix<cplx> a(12, 5);
  Eigen::MatrixXcd ae(12, 5);
  for (int i = 0; i < 12; ++i)
    for (int k = 0; k < 5; ++k) ae(i, k) = a(i, k) = cplx(g(rng), g(rng));
  Eigen::VectorXcd xe(5);
  for (int k = 0; k < 5; ++k) xe(k) = cplx(g(rng), g(rng));
  Eigen::VectorXcd be = ae * xe;
  std::vector<cplx> bv(be.data(), be.data() + 12);
  auto z = ls_solve(a, bv, kDefaultCutoff, &info);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(z[k] - xe(k)) < 1e-13);
  CHECK(info.residual_norm <= 1e-12 * be.norm());

  // inconsistent system: minimum-norm least-squares solution
  Eigen::VectorXcd r = Eigen::VectorXcd::Random(12);
  std::vector<cplx> rv(r.data(), r.data() + 12);
  auto w = ls_solve(a, rv, kDefaultCutoff, &info);
  Eigen::VectorXcd we = ae.completeOrthogonalDecomposition().solve(r);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(w[k] - we(k)) < 1e-12);
  CHECK(info.residual_norm == doctest::Approx((ae * we - r).norm()).epsilon(1e-12));

  numerics::Matrix<double> zero(3, 2);
  auto z0 = ls_solve(zero, {cplx(1.0), cplx(2.0), cplx(3.0)}, kDefaultCutoff, &info);
  CHECK(info.rank_used == 0);
  CHECK(std::abs(z0[0]) == 0.0);
  CHECK(std::abs(z0[1]) == 0.0);
  CHECK(info.residual_norm == doctest::Approx(std::sqrt(14.0)));
}

TEST_CASE("method names") {
  CHECK(parse_method("PLS") == Method::PLS);
  CHECK(parse_method("fe") == Method::FE);
  CHECK(parse_method("IPRM") == Method::IPRM);
  CHECK(to_string(Method::FE) == "FE");
  CHECK_THROWS_AS(parse_method("spline"), InputError);
}

TEST_CASE("IPRM recovers polynomials of degree 2m") {
  std::mt19937_64 rng(2);
  for (int m = 0; m <= 6; ++m) {
    auto p = random_poly(2 * m, rng);
    auto c = oracle_coeffs([&](double x) { return p(x); }, m);
    LsSolveInfo info;
    auto q = iprm(c, &info);
    REQUIRE(q.degree() == 2 * m);
    INFO("m=" << m);
    CHECK(coeff_distance(q.coeffs, p.coeffs) <= 1e-8 * coeff_norm(p.coeffs));
    CHECK(info.rank_used == 2 * m + 1);
  }
  auto zero = iprm(CoeffVec(4));
  for (auto v : zero.coeffs) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("IPRM diverges on Runge and breaks down for large m") {
  const TestFunction f = TestFunction::parse("runge:5");
  std::vector<double> err;
  for (int m = 2; m <= 10; ++m) {
    auto p = iprm(fourier::coeffs_exact(f, m));
    err.push_back(l2_error(f, [&](double x) { return p(x); }));
    MESSAGE("IPRM runge:5 m=" << m << " error=" << err.back());
  }
  for (std::size_t i = 3; i < err.size(); ++i) CHECK(err[i] > err[i - 1]);
  CHECK(err.back() > 3.0 * err[1]);
  try {
    iprm(fourier::coeffs_exact(f, 60));
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("condition number") != std::string::npos);
  }
}

TEST_CASE("poly_ls is exact on its space and matches IPRM at n = m") {
  std::mt19937_64 rng(3);
  for (auto [n, m] : {std::pair{0, 3}, {2, 5}, {4, 12}, {6, 30}}) {
    auto p = random_poly(2 * n, rng);
    auto c = oracle_coeffs([&](double x) { return p(x); }, m);
    LsSolveInfo info;
    auto q = poly_ls(c, n, &info);
    const double err = l2_error([&](double x) { return p(x); }, [&](double x) { return q(x); });
    INFO("n=" << n << " m=" << m);
    CHECK(err <= 1e-10 * coeff_norm(p.coeffs));
    CHECK(info.residual_norm <= 1e-12 * fourier::norm_m(c));
  }
  for (int m = 1; m <= 6; ++m) {
    auto c = fourier::coeffs_exact(TestFunction::parse("realpole:9"), m);
    CHECK(coeff_distance(poly_ls(c, m).coeffs, iprm(c).coeffs) <= 1e-9 * coeff_norm(iprm(c).coeffs));
  }
  CHECK_THROWS_AS(poly_ls(CoeffVec(3), 4), InputError);
}

TEST_CASE("poly_ls residual is orthogonal to the column space") {
  auto c = fourier::coeffs_exact(TestFunction::parse("exp:1"), 20);
  auto p = poly_ls(c, 5);
  auto a = poly::legendre_fourier_matrix(10, 20);
  std::vector<cplx> r(41);
  for (int j = -20; j <= 20; ++j) {
    cplx s = 0.0;
    for (int k = 0; k <= 10; ++k) s += a(j + 20, k) * p.coeffs[k];
    r[j + 20] = c[j] - s;
  }
  for (int k = 0; k <= 10; ++k) {
    cplx dot = 0.0;
    for (int j = 0; j < 41; ++j) dot += std::conj(a(j, k)) * r[j];
    CHECK(std::abs(dot) <= 1e-10 * fourier::norm_m(c));
  }
}

TEST_CASE("poly_ls error respects the B_{2n,m} bound") {
  const TestFunction f = TestFunction::parse("realpole:9");
  const int n = 4, m = 30;
  auto p = poly_ls(fourier::coeffs_exact(f, m), n);
  const double err = l2_error(f, [&](double x) { return p(x); });
  // best P_8 approximation: orthogonal Legendre projection
  const auto rule = numerics::gauss_legendre(400);
  poly::LegendrePoly best;
  for (int k = 0; k <= 2 * n; ++k) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(rule.nodes[i]) * std::sqrt((2.0 * k + 1.0) / 2.0) * std::legendre(k, rule.nodes[i]);
    best.coeffs.emplace_back(static_cast<double>(s));
  }
  const double best_err = l2_error(f, [&](double x) { return best(x); });
  const double b = frame::bnm(2 * n, m).b_value;
  CHECK(best_err <= err);
  CHECK(err <= b * best_err);
}

TEST_CASE("fe_matrix entries") {
  auto f = fe_matrix(2, 3, 2.0);
  REQUIRE(f.rows() == 7);
  REQUIRE(f.cols() == 5);
  CHECK(f(3, 2) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(f(3 + 1, 2 + 2) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(f(3 + 0, 2 + 1) == doctest::Approx(2.0 * kSqrt2 / kPi).epsilon(1e-15));
  CHECK(f(3 + 0, 2 + 1) == doctest::Approx(0.9003163).epsilon(1e-7));
  for (double T : {1.5, 2.0, 4.0, 2.7})
    for (int k = -4; k <= 4; ++k) {
      auto col = oracle_coeffs([&](double x) { return std::polar(1.0, k * kPi * x / T); }, 6);
      auto fm = fe_matrix(4, 6, T);
      for (int j = -6; j <= 6; ++j) CHECK(std::abs(fm(j + 6, k + 4) - col[j]) < 1e-14);
    }
  CHECK_THROWS_AS(fe_matrix(2, 3, 1.0), InputError);
  CHECK_THROWS_AS(fe_matrix(2, 3, std::nan("")), InputError);
}

TEST_CASE("FeSolver against a dense Eigen solve") {
  for (auto [n, m, T] : {std::tuple{3, 10, 2.0}, {5, 20, 1.5}, {3, 12, 4.0}}) {
    auto fm = fe_matrix(n, m, T);
    Eigen::MatrixXcd a(2 * m + 1, 2 * n + 1);
    for (int j = 0; j <= 2 * m; ++j)
      for (int k = 0; k <= 2 * n; ++k) a(j, k) = fm(j, k);
    std::mt19937_64 rng(static_cast<unsigned>(n * 100 + m));
    std::normal_distribution<double> g;
    CoeffVec c(m);
    Eigen::VectorXcd b(2 * m + 1);
    for (int j = -m; j <= m; ++j) b(j + m) = c[j] = cplx(g(rng), g(rng));
    auto svd = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);
    REQUIRE(svd.singularValues()(0) < 1e8 * svd.singularValues()(2 * n));
    Eigen::VectorXcd ref = svd.solve(b);
    FeSolver solver(n, m, T);
    LsSolveInfo info;
    auto ext = solver.solve(c, &info);
    INFO("n=" << n << " m=" << m << " T=" << T);
    REQUIRE(ext.a.size() == static_cast<std::size_t>(2 * n + 1));
    for (int k = 0; k <= 2 * n; ++k) CHECK(std::abs(ext.a[k] - ref(k)) <= 1e-9 * ref.norm());
    CHECK(info.rank_used == 2 * n + 1);
    CHECK(info.residual_norm == doctest::Approx((a * ref - b).norm()).epsilon(1e-9));
    CHECK(solver.rank() == 2 * n + 1);
  }
}

TEST_CASE("Fourier extension is exact on its space") {
  const int m = 30;
  auto one = fourier::coeffs_exact(TestFunction(fourier::Family::ExpLayer, 0.0), m);
  for (double T : {1.5, 2.0, 4.0}) {
    auto [ext, info] = fourier_extension(one, 10, T);
    CHECK(l2_error([](double) { return cplx(1.0); }, ext) <= 1e-12);
    CHECK(info.svd_cutoff == doctest::Approx(kDefaultCutoff));
  }
  for (double T : {2.0, 3.0}) {
    auto c = oracle_coeffs([&](double x) { return std::polar(1.0, kPi * x / T); }, m);
    auto [ext, info] = fourier_extension(c, 6, T);
    for (int k = -6; k <= 6; ++k) CHECK(std::abs(ext.a[k + 6] - (k == 1 ? 1.0 : 0.0)) < 1e-8);
  }
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  ExtensionFn phi{2.0, 5, {}};
  for (int k = -5; k <= 5; ++k) phi.a.emplace_back(g(rng), g(rng));
  auto c = oracle_coeffs(phi, 40);
  auto [ext, info] = fourier_extension(c, 5, 2.0);
  CHECK(l2_error(phi, ext) <= 1e-10 * norm_l2_oracle(phi));
}

TEST_CASE("maps are linear") {
  const int m = 25;
  auto c1 = fourier::coeffs_exact(TestFunction::parse("runge:5"), m);
  auto c2 = fourier::coeffs_exact(TestFunction::parse("cos:7sqrt2"), m);
  const cplx alpha(0.7, -0.2), beta(-1.3, 0.4);
  CoeffVec mix(m);
  for (int j = -m; j <= m; ++j) mix[j] = alpha * c1[j] + beta * c2[j];
  auto combine = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i] + beta * b[i];
    return r;
  };
  {
    auto want = combine(poly_ls(c1, 8).coeffs, poly_ls(c2, 8).coeffs);
    CHECK(coeff_distance(poly_ls(mix, 8).coeffs, want) <= 1e-11 * coeff_norm(want));
  }
  {
    CoeffVec s1(8), s2(8), sm(8);
    for (int j = -8; j <= 8; ++j) {
      s1[j] = c1[j];
      s2[j] = c2[j];
      sm[j] = mix[j];
    }
    auto want = combine(iprm(s1).coeffs, iprm(s2).coeffs);
    CHECK(coeff_distance(iprm(sm).coeffs, want) <= 1e-11 * coeff_norm(want));
  }
  {
    FeSolver s(12, m, 2.0);
    auto want = combine(s.solve(c1).a, s.solve(c2).a);
    CHECK(coeff_distance(s.solve(mix).a, want) <= 1e-11 * coeff_norm(want));
  }
}

TEST_CASE("least-squares residual does not grow with n") {
  const int m = 40;
  auto c = fourier::coeffs_exact(TestFunction::parse("runge:10"), m);
  const double scale = fourier::norm_m(c);
  double prev = INFINITY;
  for (int n = 0; n <= 14; ++n) {
    LsSolveInfo info;
    poly_ls(c, n, &info);
    CHECK(info.residual_norm <= prev + 1e-10 * scale);
    prev = info.residual_norm;
  }
  prev = INFINITY;
  for (int n = 0; n <= 12; ++n) {
    // no cutoff: nested spaces
    auto r = fourier_extension(c, n, 2.0, 0.0).second;
    CHECK(r.residual_norm <= prev + 1e-10 * scale);
    prev = r.residual_norm;
  }
}

TEST_CASE("l2_error") {
  const TestFunction f = TestFunction::parse("realpole:9");
  CHECK(l2_error(f, [&](double x) { return cplx(f(x)); }) <= 1e-13);
  CHECK(l2_error([](double) { return cplx(1.0); }, [](double) { return cplx(0.0); }) ==
        doctest::Approx(kSqrt2).epsilon(1e-14));
  // raw truncated series: Gibbs baseline
  const int m = 100;
  auto c = fourier::coeffs_exact(f, m);
  const double gibbs = l2_error(f, [&](double x) { return fourier::evaluate_truncated_series(c, x); });
  const double ref = norm_l2_oracle([&](double x) { return cplx(f(x)) - fourier::evaluate_truncated_series(c, x); });
  CHECK(gibbs == doctest::Approx(ref).epsilon(1e-3));
  CHECK(gibbs > 0.1 / std::sqrt(double(m)));
  CHECK(gibbs < 10.0 / std::sqrt(double(m)));
  auto p = poly_ls(c, 12);
  CHECK(l2_error(f, [&](double x) { return p(x); }) < 1e-3 * gibbs);
}

TEST_CASE("Fourier extension beats polynomial least squares on Runge") {
  const TestFunction f = TestFunction::parse("runge:5");
  const int m = 200;
  auto c = fourier::coeffs_exact(f, m);
  cond::SelectOptions opt;
  const int n_pls = cond::select_max_n(Method::PLS, m, 0.0, opt).n;
  const int n_fe = cond::select_max_n(Method::FE, m, 2.0, opt).n;
  auto p = poly_ls(c, n_pls);
  auto [ext, info] = fourier_extension(c, n_fe, 2.0);
  const double e_pls = l2_error(f, [&](double x) { return p(x); });
  const double e_fe = l2_error(f, ext);
  MESSAGE("runge:5 m=200 PLS n=" << n_pls << " error=" << e_pls << ", FE n=" << n_fe << " error=" << e_fe);
  CHECK(e_fe < e_pls);
}
