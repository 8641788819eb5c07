// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "numerics/precision.hpp"
#include "poly/legendre.hpp"

namespace gibbs::frame {

using numerics::PrecisionMode;

// Largest b_star for which each arithmetic is trusted.
inline constexpr double kDoubleBStarCap = 1e8;
inline constexpr double kDoubleDoubleBStarCap = 1e24;

struct BnmReport {
  int n = 0;
  int m = 0;
  double b_value = 1.0;  // +inf when 2m < n
  double b_star = 1.0;
  double sigma_min = 1.0;
  PrecisionMode precision = PrecisionMode::Double;
};

// B_{n,m} = 1/sigma_min of the Legendre-Fourier matrix. Throws
// NumericalError when b_star exceeds the cap of the chosen arithmetic.
BnmReport bnm(int n, int m, PrecisionMode precision = PrecisionMode::Double);

// Cheapest arithmetic whose cap admits b_star(n, m).
PrecisionMode required_precision(int n, int m);

// sqrt(1 + n/(8m) + n/(16m) (9/4)^{n^2/m}); 1 for n = 0, +inf for m = 0 < n.
double b_star(int n, int m);

struct WitnessRatio {
  double value = 1.0;
  int truncation = 0;          // J
  double tail_fraction = 0.0;  // tail estimate / numerator
};

inline constexpr int kWitnessTruncation = 1000000;

// B(4q+1, m, P) for the witness polynomial P.
WitnessRatio witness_ratio(int q, int m, int truncation = kWitnessTruncation);

// Intermediate lower bound
// sqrt(1 + q/(2m) + (q/(4m)) gamma^{2q^2/m}), gamma = (1+q/m)^{m/q}.
double witness_lower_bound(int q, int m);

inline constexpr int kZetaFormMaxDegree = 9;

// B(n, m, p) through the exact zeta quadratic form. Degree <= 9.
double zeta_form_bound(const poly::TPolyCoeffs& p, int m);

// Same quantity by direct summation of |phat_j|^2 up to `truncation` with a
// first-order tail (valid when the lowest coefficient b_1 dominates at 0).
double direct_sum_bound(const poly::TPolyCoeffs& p, int m, int truncation = kWitnessTruncation);

// sqrt(lambda_max) of the pencil (Z, Z_m), the supremum of B(n, m, p) over
// polynomials with zero mean. n in 1..9.
double sup_zeta_bound(int n, int m);

void write_bnm_csv(const std::vector<BnmReport>& rows, std::ostream& os);

}  // namespace gibbs::frame
