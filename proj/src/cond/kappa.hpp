// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "numerics/precision.hpp"
#include "recon/maps.hpp"

namespace gibbs::cond {

using recon::Method;

enum class Estimator { SigmaMinExact, Randomized, PowerIteration };
std::string to_string(Estimator e);

inline constexpr int kDefaultTrials = 100;
inline constexpr int kTrapezoidNodes = 2001;
inline constexpr double kDefaultKappa0 = 10.0;

struct ConditionReport {
  Method method = Method::PLS;
  int n = 0;
  int m = 0;
  double T = std::numeric_limits<double>::quiet_NaN();  // FE only
  double kappa = 1.0;
  Estimator estimator = Estimator::SigmaMinExact;
  int trials = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  int quadrature_nodes = 0;
};

// kappa = B_{2n,m}; arithmetic chosen from the predicted B*.
ConditionReport kappa_pls(int n, int m);

// Max over `trials` Gaussian directions b in the retained left singular
// range of ||F(b)||_2 / ||b||, with ||.||_2 from the 2001-point trapezoid
// rule. Trial i draws from a stream seeded by (seed, i).
ConditionReport kappa_fe_randomized(const recon::FeSolver& solver, int trials, std::uint64_t seed);
ConditionReport kappa_fe_randomized(int n, int m, double T, int trials = kDefaultTrials,
                                    std::uint64_t seed = 0);
ConditionReport kappa_pls_randomized(int n, int m, int trials = kDefaultTrials, std::uint64_t seed = 0);

// Operator norm by power iteration on a Gauss-Legendre factor of the Gram
// matrix. max_iters >= 10; stops once the relative change drops below 1e-10.
ConditionReport kappa_fe_power(const recon::FeSolver& solver, int max_iters = 20000);
ConditionReport kappa_fe_power(int n, int m, double T, int max_iters = 20000);
ConditionReport kappa_pls_power(int n, int m, int max_iters = 20000);

struct SelectOptions {
  double kappa0 = kDefaultKappa0;
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  int start_n = 0;  // previous answer
  int window = 3;
  int max_n = -1;   // default: m (least-squares regime 2n+1 <= 2m+1)
};

struct Selection {
  int n = 0;
  double kappa = 1.0;
  int evaluations = 0;
  int non_monotone = 0;  // observed kappa(n+1) < kappa(n) among evaluated pairs
};

// Largest n with kappa <= kappa0 by ascent from start_n with a scan window.
Selection select_max_n(Method method, int m, double T, const SelectOptions& opt);

void write_condition_csv(const std::vector<ConditionReport>& rows, std::ostream& os);

}  // namespace gibbs::cond
