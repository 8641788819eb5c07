// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "numerics/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "numerics/error.hpp"

namespace gibbs::numerics {

namespace {

double abs_of(double x) { return std::abs(x); }
double abs_of(const dd& x) { return std::abs(x.hi); }

// Fills out[0..kmax] with j_k(z) given the exact j_0(z), j_1(z).
// Upward recurrence while every requested order stays below z, Miller's
// downward recurrence otherwise. The start order of the downward pass is
// found by running the recurrence upward from max(kmax, z) until the
// dominant solution has grown past 1/tol.
template <class R>
void bessel_recurrence(int kmax, const R& z, const R& j0, const R& j1, double tol,
                       std::vector<R>& out) {
  out.assign(kmax + 1, R(0.0));
  out[0] = j0;
  if (kmax == 0) return;
  out[1] = j1;
  if (kmax == 1) return;
  const double zd = to_double(z);
  if (kmax < zd) {
    for (int k = 1; k < kmax; ++k) out[k + 1] = R(2.0 * k + 1.0) / z * out[k] - out[k - 1];
    return;
  }

  int start = std::max(kmax, static_cast<int>(std::ceil(zd))) + 1;
  {
    double p_prev = 0.0;
    double p = 1.0;
    while (std::abs(p) < 1.0 / tol) {
      double next = (2.0 * start + 1.0) / zd * p - p_prev;
      p_prev = p;
      p = next;
      ++start;
    }
    start += 4;
  }

  // Downward pass with rescaling to stay inside the exponent range.
  R next(0.0);
  R cur(1e-300);
  std::vector<R> seq(start + 1, R(0.0));
  seq[start] = cur;
  for (int k = start; k >= 1; --k) {
    R prev = R(2.0 * k + 1.0) / z * cur - next;
    next = cur;
    cur = prev;
    seq[k - 1] = cur;
    if (abs_of(cur) > 1e250) {
      for (int i = k - 1; i <= start; ++i) seq[i] = seq[i] * 1e-250;
      cur = seq[k - 1];
      next = seq[k];
    }
  }
  // Normalise with whichever exact value is larger in magnitude; j_0
  // vanishes at multiples of pi.
  R scale = abs_of(j0) >= abs_of(j1) ? j0 / seq[0] : j1 / seq[1];
  for (int k = 0; k <= kmax; ++k) out[k] = seq[k] * scale;
  out[0] = j0;
  out[1] = j1;
}

void check_bessel_args(int k, double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw InputError("spherical_bessel: z must be finite and > 0, got " + std::to_string(z));
  if (k < 0 || k > kMaxBesselOrder)
    throw InputError("spherical_bessel: order " + std::to_string(k) + " outside [0, " +
                     std::to_string(kMaxBesselOrder) + "]");
}

void exact_j0_j1(double z, double& j0, double& j1) {
  if (z < 0.5) {
    // Power series avoids the cancellation in sin z / z^2 - cos z / z.
    double z2 = z * z;
    double t0 = 1.0;
    double t1 = z / 3.0;
    j0 = 0.0;
    j1 = 0.0;
    for (int i = 0; i < 12; ++i) {
      j0 += t0;
      j1 += t1;
      t0 *= -z2 / ((2.0 * i + 2.0) * (2.0 * i + 3.0));
      t1 *= -z2 / ((2.0 * i + 2.0) * (2.0 * i + 5.0));
    }
    return;
  }
  j0 = std::sin(z) / z;
  j1 = std::sin(z) / (z * z) - std::cos(z) / z;
}

// Bernoulli numbers B_2, B_4, ..., B_30.
constexpr std::array<std::array<double, 2>, 15> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

void check_zeta_arg(int s) {
  if (s < 2) throw InputError("riemann_zeta: s=" + std::to_string(s) + " gives a divergent series");
  if (s > 64) throw InputError("riemann_zeta: s=" + std::to_string(s) + " exceeds 64");
}

// Euler-Maclaurin tail sum_{j>=N} j^-s with `terms` Bernoulli corrections.
template <class R>
R zeta_tail(int s, double n, int terms) {
  R inv_n = R(1.0) / R(n);
  R n_pow = R(1.0);  // N^{-(s-1)}
  for (int i = 0; i < s - 1; ++i) n_pow = n_pow * inv_n;
  R tail = n_pow / R(s - 1.0) + n_pow * inv_n * 0.5;
  // Term r: B_2r/(2r)! * s(s+1)...(s+2r-2) * N^{-s-2r+1}
  R factor = n_pow * inv_n * inv_n * R(static_cast<double>(s));  // r = 1
  double fact = 2.0;
  for (int r = 1; r <= terms; ++r) {
    tail = tail + factor * (R(kBernoulli[r - 1][0]) / R(kBernoulli[r - 1][1]) / R(fact));
    factor = factor * inv_n * inv_n * R((s + 2.0 * r - 1.0) * (s + 2.0 * r));
    fact *= (2.0 * r + 1.0) * (2.0 * r + 2.0);
  }
  return tail;
}

}  // namespace

BesselValue spherical_bessel(int k, double z) {
  check_bessel_args(k, z);
  std::vector<double> seq = spherical_bessel_sequence(k, z);
  BesselValue out{seq[k], false};
  if (std::abs(out.value) < 1e-300) {
    out.value = std::copysign(0.0, out.value);
    out.underflow = true;
  }
  return out;
}

std::vector<double> spherical_bessel_sequence(int kmax, double z) {
  check_bessel_args(kmax, z);
  double j0 = 0.0;
  double j1 = 0.0;
  exact_j0_j1(z, j0, j1);
  std::vector<double> out;
  bessel_recurrence<double>(kmax, z, j0, j1, 1e-20, out);
  for (double& v : out)
    if (std::abs(v) < 1e-300) v = std::copysign(0.0, v);
  return out;
}

std::vector<dd> spherical_bessel_sequence_at_pi_multiple(int kmax, int j) {
  if (j < 1) throw InputError("spherical_bessel_sequence_at_pi_multiple: j must be >= 1");
  check_bessel_args(kmax, 1.0);
  dd z = dd_pi * static_cast<double>(j);
  dd j1 = dd(j % 2 == 1 ? 1.0 : -1.0) / z;
  std::vector<dd> out;
  bessel_recurrence<dd>(kmax, z, dd(0.0), j1, 1e-40, out);
  return out;
}

double riemann_zeta(int s) {
  check_zeta_arg(s);
  const int head = (s <= 3) ? 1000000 : static_cast<int>(std::ceil(std::pow(1e18, 1.0 / s))) + 8;
  CompensatedSum sum;
  for (int j = head - 1; j >= 1; --j) sum.add(std::pow(static_cast<double>(j), -s));
  dd total = sum.value() + zeta_tail<dd>(s, head, 3);
  return to_double(total);
}

dd riemann_zeta_dd(int s) {
  check_zeta_arg(s);
  constexpr int head = 40;
  dd sum(0.0);
  for (int j = head - 1; j >= 1; --j) {
    dd inv = dd(1.0) / dd(static_cast<double>(j));
    dd p(1.0);
    for (int i = 0; i < s; ++i) p = p * inv;
    sum = sum + p;
  }
  return sum + zeta_tail<dd>(s, head, 15);
}

}  // namespace gibbs::numerics
