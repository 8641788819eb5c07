// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
//
// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving about 106 bits of significand. Algorithms follow Dekker / Knuth
// error-free transformations; products use fma.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace gibbs::numerics {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

using dd = DoubleDouble;

namespace detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
  dd s = detail::two_sum(a.hi, b.hi);
  dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator+(const dd& a, double b) {
  dd s = detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }
inline dd operator-(const dd& a, double b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator*(const dd& a, double b) {
  dd p = detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return q + q3;
}

inline dd operator/(const dd& a, double b) { return a / dd(b); }

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<(const dd& a, const dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline dd abs(const dd& a) { return a.hi < 0.0 ? -a : a; }

inline dd sqrt(const dd& a) {
  if (a.hi <= 0.0) return dd(a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  dd sq = detail::two_prod(ax, ax);
  double corr = (a - sq).hi * (x * 0.5);
  return detail::two_sum(ax, corr);
}

inline bool isfinite(const dd& a) { return std::isfinite(a.hi); }
inline double to_double(const dd& a) { return a.hi + a.lo; }
inline double to_double(double a) { return a; }

// pi to double-double precision.
inline constexpr dd dd_pi{3.141592653589793116e+00, 1.224646799147353207e-16};

// Compensated summation (Neumaier) of doubles into a double-double.
class CompensatedSum {
 public:
  void add(double x) { sum_ = sum_ + x; }
  void add(const dd& x) { sum_ = sum_ + x; }
  dd value() const { return sum_; }

 private:
  dd sum_{};
};

}  // namespace gibbs::numerics
