// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "numerics/double_double.hpp"

namespace gibbs::numerics {

inline constexpr int kMaxBesselOrder = 500;

struct BesselValue {
  double value = 0.0;
  bool underflow = false;  // |j_k(z)| < 1e-300; value is a signed zero
};

// Spherical Bessel function j_k(z), z > 0, 0 <= k <= kMaxBesselOrder.
BesselValue spherical_bessel(int k, double z);

// j_0(z), ..., j_kmax(z) in one recurrence pass.
std::vector<double> spherical_bessel_sequence(int kmax, double z);

// j_0(pi*j), ..., j_kmax(pi*j) for a positive integer j in double-double.
// Uses the exact values j_0(pi*j) = 0 and j_1(pi*j) = (-1)^(j+1) / (pi*j).
std::vector<dd> spherical_bessel_sequence_at_pi_multiple(int kmax, int j);

// Riemann zeta at integer s, 2 <= s <= 64.
double riemann_zeta(int s);
dd riemann_zeta_dd(int s);

}  // namespace gibbs::numerics
