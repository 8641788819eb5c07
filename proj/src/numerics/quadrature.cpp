// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "numerics/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "numerics/error.hpp"

namespace gibbs::numerics {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: N must be >= 1, got " + std::to_string(n));
  if (n > kMaxQuadratureNodes)
    throw InputError("gauss_legendre: N=" + std::to_string(n) + " exceeds the cap " +
                     std::to_string(kMaxQuadratureNodes));
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double pi = std::numbers::pi;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root, then Newton.
    double theta = pi * (4.0 * i + 3.0) / (4.0 * n + 2.0);
    double x = std::cos(theta) * (1.0 - (n - 1.0) / (8.0 * n * n * n));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    legendre_pair(n, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (2 * i + 1 == n) x = 0.0;
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<QuadratureRule>(gauss_legendre(n))).first;
  return *it->second;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int per_panel) {
  if (panels < 1 || !(b > a)) throw InputError("composite_gauss_legendre: invalid panel layout");
  const QuadratureRule& base = gauss_legendre_cached(per_panel);
  QuadratureRule rule;
  rule.order = panels * per_panel;
  rule.nodes.reserve(rule.order);
  rule.weights.reserve(rule.order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (int i = 0; i < per_panel; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace gibbs::numerics
