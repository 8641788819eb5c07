// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "recon/maps.hpp"

#include <cmath>
#include <numbers>

#include "fourier/coeffs.hpp"
#include "numerics/error.hpp"

namespace gibbs::recon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

cplx i_pow(int k) {
  static const cplx table[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  return table[k % 4];
}

// sqrt2 sin(pi y)/(pi y), exact at y = 0.
double fe_entry(double y) {
  if (y == 0.0) return kSqrt2;
  double r = std::remainder(y, 2.0);
  return kSqrt2 * std::sin(kPi * r) / (kPi * y);
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::IPRM: return "IPRM";
    case Method::PLS: return "PLS";
    case Method::FE: return "FE";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "IPRM" || s == "iprm") return Method::IPRM;
  if (s == "PLS" || s == "pls") return Method::PLS;
  if (s == "FE" || s == "fe") return Method::FE;
  throw InputError("unknown method '" + s + "' (expected IPRM, PLS or FE)");
}

cplx ExtensionFn::operator()(double x) const {
  cplx s = 0.0;
  for (int k = -n; k <= n; ++k) s += a[k + n] * std::polar(1.0, k * kPi * x / T);
  return s;
}

PolyLsSolver::PolyLsSolver(int n, int m, double cutoff_rel) : n_(n), m_(m) {
  if (n < 0 || m < 0) throw InputError("poly_ls: n and m must be >= 0");
  if (n > m) throw InputError("poly_ls: n=" + std::to_string(n) + " > m=" + std::to_string(m) +
                              " is underdetermined");
  core_ = TruncatedSvdSolver<double>(poly::legendre_fourier_matrix_real<double>(2 * n, m), cutoff_rel);
}

std::vector<cplx> PolyLsSolver::from_range(const cplx* y) const {
  // A = R diag((-i)^k), so x = diag(i^k) R^+ c.
  std::vector<cplx> x = core_.from_range(y);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] *= i_pow(static_cast<int>(k));
  return x;
}

poly::LegendrePoly PolyLsSolver::solve(const CoeffVec& c, LsSolveInfo* info) const {
  if (c.m() != m_) throw InputError("poly_ls: coefficient half-width does not match the solver");
  std::vector<cplx> x = core_.solve(c.values(), info);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] *= i_pow(static_cast<int>(k));
  return poly::LegendrePoly{std::move(x)};
}

poly::LegendrePoly iprm(const CoeffVec& c, LsSolveInfo* info) {
  PolyLsSolver s(c.m(), c.m(), 0.0);
  const auto& sig = s.core().sigma();
  double cond = sig.back() > 0.0 ? sig.front() / sig.back() : INFINITY;
  if (!(cond < 1e15))
    throw NumericalError("iprm: square system is numerically singular at m=" + std::to_string(c.m()) +
                         " (estimated condition number " + fourier::format_double(cond) + ")");
  return s.solve(c, info);
}

poly::LegendrePoly poly_ls(const CoeffVec& c, int n, LsSolveInfo* info) {
  return PolyLsSolver(n, c.m(), 0.0).solve(c, info);
}

Matrix<double> fe_matrix(int n, int m, double T) {
  if (!(T > 1.0) || !std::isfinite(T)) throw InputError("fe_matrix: T must be > 1");
  if (n < 0 || m < 0) throw InputError("fe_matrix: n and m must be >= 0");
  Matrix<double> f(2 * m + 1, 2 * n + 1);
  for (int k = -n; k <= n; ++k)
    for (int j = -m; j <= m; ++j) f(j + m, k + n) = fe_entry(k / T - j);
  return f;
}

FeSolver::FeSolver(int n, int m, double T, double cutoff_rel) : n_(n), m_(m), T_(T), cutoff_(cutoff_rel) {
  if (!(T > 1.0) || !std::isfinite(T)) throw InputError("fourier_extension: T must be > 1");
  if (n < 0 || m < 0) throw InputError("fourier_extension: n and m must be >= 0");
  auto F = [T](int j, int k) { return fe_entry(k / T - j); };
  Matrix<double> fe(m + 1, n + 1);
  fe(0, 0) = F(0, 0);
  for (int k = 1; k <= n; ++k) fe(0, k) = kSqrt2 * F(0, k);
  for (int j = 1; j <= m; ++j) {
    fe(j, 0) = kSqrt2 * F(j, 0);
    for (int k = 1; k <= n; ++k) fe(j, k) = F(j, k) + F(j, -k);
  }
  even_ = TruncatedSvdSolver<double>(fe, 0.0);
  if (n > 0 && m > 0) {
    Matrix<double> fo(m, n);
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= n; ++k) fo(j - 1, k - 1) = F(j, k) - F(j, -k);
    odd_ = TruncatedSvdSolver<double>(fo, 0.0);
  }
  double smax = std::max(even_.sigma_max(), odd_.sigma_max());
  double thr = smax > 0.0 ? cutoff_rel * smax : 1.0;
  even_.truncate_below(thr);
  if (n > 0 && m > 0) odd_.truncate_below(thr);
}

ExtensionFn FeSolver::assemble(const std::vector<cplx>& s, const std::vector<cplx>& d) const {
  ExtensionFn phi;
  phi.T = T_;
  phi.n = n_;
  phi.a.assign(2 * n_ + 1, cplx(0.0));
  phi.a[n_] = s[0];
  for (int k = 1; k <= n_; ++k) {
    cplx dk = d.empty() ? cplx(0.0) : d[k - 1];
    phi.a[n_ + k] = (s[k] + dk) * kInvSqrt2;
    phi.a[n_ - k] = (s[k] - dk) * kInvSqrt2;
  }
  return phi;
}

ExtensionFn FeSolver::solve(const CoeffVec& c, LsSolveInfo* info) const {
  if (c.m() != m_) throw InputError("fourier_extension: coefficient half-width does not match the solver");
  std::vector<cplx> bp(m_ + 1);
  std::vector<cplx> bm(m_);
  bp[0] = c[0];
  for (int j = 1; j <= m_; ++j) {
    bp[j] = (c[j] + c[-j]) * kInvSqrt2;
    bm[j - 1] = (c[j] - c[-j]) * kInvSqrt2;
  }
  LsSolveInfo ie;
  LsSolveInfo io;
  std::vector<cplx> s = even_.solve(bp, &ie);
  std::vector<cplx> d;
  if (n_ > 0 && m_ > 0) {
    d = odd_.solve(bm, &io);
  } else {
    // No odd unknowns: the odd data is entirely residual.
    double r = 0.0;
    for (const cplx& v : bm) r += std::norm(v);
    io.residual_norm = std::sqrt(r);
  }
  if (info) {
    info->rank_used = ie.rank_used + io.rank_used;
    info->svd_cutoff = cutoff_;
    info->residual_norm = std::hypot(ie.residual_norm, io.residual_norm);
  }
  return assemble(s, d);
}

std::pair<ExtensionFn, LsSolveInfo> fourier_extension(const CoeffVec& c, int n, double T, double cutoff_rel) {
  LsSolveInfo info;
  ExtensionFn phi = FeSolver(n, c.m(), T, cutoff_rel).solve(c, &info);
  return {std::move(phi), info};
}

double l2_error(const std::function<cplx(double)>& f, const std::function<cplx(double)>& approx, int nodes) {
  return fourier::norm_l2([&](double x) { return f(x) - approx(x); }, nodes);
}

double l2_error(const fourier::TestFunction& f, const std::function<cplx(double)>& approx, int nodes) {
  return l2_error([&f](double x) { return cplx(f(x)); }, approx, nodes);
}

}  // namespace gibbs::recon
