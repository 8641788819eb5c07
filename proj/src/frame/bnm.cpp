// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "frame/bnm.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "fourier/coeffs.hpp"
#include "numerics/special.hpp"
#include "numerics/svd.hpp"

namespace gibbs::frame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using numerics::dd;

}  // namespace

double b_star(int n, int m) {
  if (n < 0 || m < 0) throw InputError("b_star: n and m must be >= 0");
  if (n == 0) return 1.0;
  if (m == 0) return kInf;
  const double base = 1.0 + n / (8.0 * m);
  const double log_term = std::log(n / (16.0 * m)) + (static_cast<double>(n) * n / m) * std::log(2.25);
  if (log_term < 700.0) return std::sqrt(base + std::exp(log_term));
  // sqrt(e^L (1 + base e^{-L})) with the correction below rounding.
  double half = 0.5 * log_term;
  return half > 709.0 ? kInf : std::exp(half);
}

PrecisionMode required_precision(int n, int m) {
  double bs = b_star(n, m);
  if (bs <= kDoubleBStarCap || 2 * m < n) return PrecisionMode::Double;
  return PrecisionMode::DoubleDouble;
}

BnmReport bnm(int n, int m, PrecisionMode precision) {
  if (n < 0 || m < 0) throw InputError("bnm: n and m must be >= 0");
  BnmReport r;
  r.n = n;
  r.m = m;
  r.precision = precision;
  r.b_star = b_star(n, m);
  if (2 * m < n) {
    // More unknowns than data: a non-zero polynomial has vanishing data.
    r.sigma_min = 0.0;
    r.b_value = kInf;
    return r;
  }
  const double cap = precision == PrecisionMode::Double ? kDoubleBStarCap : kDoubleDoubleBStarCap;
  if (!(r.b_star <= cap))
    throw NumericalError("bnm: predicted B*_{" + std::to_string(n) + "," + std::to_string(m) +
                         "} = " + fourier::format_double(r.b_star) + " exceeds the " +
                         numerics::to_string(precision) + " cap " + fourier::format_double(cap));
  poly::check_legendre_fourier_consistency(n, m);
  double smin = 0.0;
  if (precision == PrecisionMode::Double) {
    auto s = numerics::singular_values(poly::legendre_fourier_matrix_real<double>(n, m));
    smin = s.back();
  } else {
    auto s = numerics::singular_values(poly::legendre_fourier_matrix_real<dd>(n, m));
    smin = numerics::to_double(s.back());
  }
  r.sigma_min = smin;
  r.b_value = smin > 0.0 ? 1.0 / smin : kInf;
  return r;
}

WitnessRatio witness_ratio(int q, int m, int truncation) {
  poly::WitnessPoly p = poly::build_witness(q, m);
  if (truncation <= m) throw InputError("witness_ratio: truncation must exceed m");
  // P is odd, so the +-j terms are equal and the factor 2 cancels.
  numerics::CompensatedSum head;
  numerics::CompensatedSum all;
  for (int j = truncation; j >= 1; --j) {
    double v = p(1.0 / j);
    double v2 = v * v;
    all.add(v2);
    if (j <= m) head.add(v2);
  }
  double last = p(1.0 / truncation);
  double tail = static_cast<double>(truncation) * last * last;
  dd num = all.value() + tail;
  WitnessRatio out;
  out.value = std::sqrt(numerics::to_double(num / head.value()));
  out.truncation = truncation;
  out.tail_fraction = tail / numerics::to_double(num);
  return out;
}

double witness_lower_bound(int q, int m) {
  double gamma = std::pow(1.0 + static_cast<double>(q) / m, static_cast<double>(m) / q);
  return std::sqrt(1.0 + q / (2.0 * m) + (q / (4.0 * m)) * std::pow(gamma, 2.0 * q * q / m));
}

namespace {

void check_zeta_degree(int n) {
  if (n > kZetaFormMaxDegree)
    throw InputError("zeta form: degree " + std::to_string(n) + " exceeds " +
                     std::to_string(kZetaFormMaxDegree));
}

// sum_{1 <= |j| <= m} |ptilde(1/j)|^2
dd finite_sum(const poly::TPolyCoeffs& p, int m) {
  dd s(0.0);
  for (int j = m; j >= 1; --j) {
    s += std::norm(p.eval(1.0 / j));
    s += std::norm(p.eval(-1.0 / j));
  }
  return s;
}

}  // namespace

double zeta_form_bound(const poly::TPolyCoeffs& p, int m) {
  const int n = p.degree();
  check_zeta_degree(n);
  if (m < 1) throw InputError("zeta_form_bound: m must be >= 1");
  // sum_{j != 0} |ptilde(1/j)|^2 = sum_{k+l even} 2 Re(b_k conj(b_l)) zeta(k+l).
  dd num(std::norm(p.hat_p0));
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      if ((k + l) % 2 != 0) continue;
      double w = 2.0 * (p.b[k - 1] * std::conj(p.b[l - 1])).real();
      num += numerics::riemann_zeta_dd(k + l) * w;
    }
  dd den = finite_sum(p, m) + std::norm(p.hat_p0);
  return std::sqrt(numerics::to_double(num / den));
}

double direct_sum_bound(const poly::TPolyCoeffs& p, int m, int truncation) {
  check_zeta_degree(p.degree());
  if (truncation <= m) throw InputError("direct_sum_bound: truncation must exceed m");
  dd all = finite_sum(p, truncation);
  double last = std::norm(p.eval(1.0 / truncation)) + std::norm(p.eval(-1.0 / truncation));
  all += static_cast<double>(truncation) * last;
  dd num = all + std::norm(p.hat_p0);
  dd den = finite_sum(p, m) + std::norm(p.hat_p0);
  return std::sqrt(numerics::to_double(num / den));
}

double sup_zeta_bound(int n, int m) {
  if (n < 1) throw InputError("sup_zeta_bound: n must be >= 1");
  check_zeta_degree(n);
  if (m < 1) throw InputError("sup_zeta_bound: m must be >= 1");
  numerics::Matrix<dd> z(n, n);
  numerics::Matrix<dd> zm(n, n);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      if ((k + l) % 2 != 0) continue;
      z(k - 1, l - 1) = numerics::riemann_zeta_dd(k + l) * 2.0;
      dd s(0.0);
      for (int j = m; j >= 1; --j) {
        dd inv = dd(1.0) / dd(static_cast<double>(j));
        dd pw(1.0);
        for (int e = 0; e < k + l; ++e) pw *= inv;
        s += pw;
      }
      zm(k - 1, l - 1) = s * 2.0;
    }
  return std::sqrt(numerics::gen_sym_eig_max(z, zm));
}

void write_bnm_csv(const std::vector<BnmReport>& rows, std::ostream& os) {
  os << "n,m,b_value,b_star,sigma_min,precision_mode\n";
  for (const BnmReport& r : rows)
    os << r.n << ',' << r.m << ',' << fourier::format_double(r.b_value) << ','
       << fourier::format_double(r.b_star) << ',' << fourier::format_double(r.sigma_min) << ','
       << numerics::to_string(r.precision) << '\n';
}

}  // namespace gibbs::frame
