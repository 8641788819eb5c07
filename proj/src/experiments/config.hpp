// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "numerics/precision.hpp"

namespace gibbs::experiments {

enum class Figure { Fig1, Fig2, Fig3 };
std::string to_string(Figure f);
Figure parse_figure(const std::string& s);

struct ExperimentConfig {
  Figure figure = Figure::Fig2;
  // fig1
  std::vector<std::pair<double, double>> alpha_beta;
  int n_min = 1;
  int n_max = 64;
  // fig2 / fig3: m = m_min, m_min + stride, ..., <= m_max
  int m_min = 1;
  int m_max = 200;
  int stride = 1;
  std::vector<double> T;
  std::vector<std::string> functions;  // fig3 test-function specs
  double kappa0 = 10.0;
  int trials = 100;
  std::uint64_t seed = 20120101;
  std::string out_dir = ".";
  numerics::PrecisionMode precision = numerics::PrecisionMode::Double;
  int threads = 1;

  static ExperimentConfig defaults(Figure figure);
  std::vector<int> m_grid() const;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace gibbs::experiments
