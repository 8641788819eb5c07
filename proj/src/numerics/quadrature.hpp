// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace gibbs::numerics {

inline constexpr int kMaxQuadratureNodes = 20000;

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // positive, summing to 2
  int order = 0;
};

// N-point Gauss-Legendre rule on [-1, 1]. Throws InputError for N < 1 or
// N > kMaxQuadratureNodes.
QuadratureRule gauss_legendre(int n);

// Same rule, memoised per N. Safe for concurrent use.
const QuadratureRule& gauss_legendre_cached(int n);

// Composite rule: `panels` equal panels on [a, b], each with a `per_panel`
// point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int per_panel);

}  // namespace gibbs::numerics
