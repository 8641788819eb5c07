// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "experiments/config.hpp"
#include "recon/solver.hpp"

namespace gibbs::experiments {

struct RunSummary {
  std::vector<std::string> files;     // written, in order
  std::vector<std::string> warnings;
  int rows = 0;
  int violations = 0;     // fig1: rows with B < B*
  int non_monotone = 0;   // fig2/fig3: observed kappa(n+1) < kappa(n)
};

// One CSV per (alpha, beta) plus fig1_summary.csv. Rows whose b_star
// exceeds the cap of config.precision are skipped.
RunSummary run_fig1(const ExperimentConfig& config);
// fig2.csv with selection chains for PLS and FE per T, plus fig2_summary.csv.
RunSummary run_fig2(const ExperimentConfig& config);
// fig3_<label>.csv per test function.
RunSummary run_fig3(const ExperimentConfig& config);
RunSummary run(const ExperimentConfig& config);

// First line of every CSV written by the driver.
std::string metadata_line(const ExperimentConfig& config);

struct RecoverRequest {
  std::string coeff_file;   // CoeffVec CSV; or
  std::string function;     // test-function spec, with m
  int m = -1;
  std::string method = "PLS";
  int n = 0;                // ignored for IPRM
  double T = 2.0;           // FE only
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

struct RecoverResult {
  std::string json_path;
  std::string samples_path;
  double l2_error = std::numeric_limits<double>::quiet_NaN();  // NaN when f unknown
  recon::LsSolveInfo info;
};

inline constexpr int kRecoverSamples = 1001;

// Writes recover.json and recover_samples.csv into out_dir.
RecoverResult recover(const RecoverRequest& req);

struct SvgRequest {
  std::string csv_path;
  std::string x;
  std::vector<std::string> y;
  std::vector<std::string> group;  // columns splitting rows into series
  bool log_y = false;
  std::string title;
  std::string out_path;
};

// Standalone SVG line chart. Returns warnings.
std::vector<std::string> emit_svg(const SvgRequest& req);

}  // namespace gibbs::experiments
