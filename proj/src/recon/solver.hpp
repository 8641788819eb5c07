// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "numerics/matrix.hpp"
#include "numerics/svd.hpp"

namespace gibbs::recon {

using numerics::cplx;
using numerics::Matrix;

inline constexpr double kDefaultCutoff = 1e-14;

struct LsSolveInfo {
  int rank_used = 0;
  double svd_cutoff = 0.0;
  double residual_norm = 0.0;
};

// Truncated-SVD least squares: singular values below cutoff_rel * sigma_max
// are discarded (cutoff 0 keeps every non-zero one). Factor once, solve many.
// T is double or cplx; right-hand sides are complex.
template <class T>
class TruncatedSvdSolver {
 public:
  TruncatedSvdSolver() = default;
  TruncatedSvdSolver(const Matrix<T>& a, double cutoff_rel);

  std::vector<cplx> solve(const std::vector<cplx>& b, LsSolveInfo* info = nullptr) const;

  // x = V_r diag(1/sigma_r) y for coordinates y in the retained left range.
  std::vector<cplx> from_range(const cplx* y) const;

  int rows() const { return static_cast<int>(u_.rows()); }
  int cols() const { return static_cast<int>(v_.rows()); }
  int rank() const { return rank_; }
  double cutoff() const { return cutoff_; }
  double sigma_max() const { return sigma_.empty() ? 0.0 : sigma_.front(); }
  const std::vector<double>& sigma() const { return sigma_; }
  const Matrix<T>& u() const { return u_; }
  const Matrix<T>& v() const { return v_; }
  // Keep only singular values >= threshold (absolute).
  void truncate_below(double threshold);

 private:
  Matrix<T> a_;
  Matrix<T> u_;
  Matrix<T> v_;
  std::vector<double> sigma_;
  int rank_ = 0;
  double cutoff_ = 0.0;
};

extern template class TruncatedSvdSolver<double>;
extern template class TruncatedSvdSolver<cplx>;

// Minimum-norm least-squares solution with cutoff.
std::vector<cplx> ls_solve(const Matrix<cplx>& a, const std::vector<cplx>& b, double cutoff_rel,
                           LsSolveInfo* info = nullptr);
std::vector<cplx> ls_solve(const Matrix<double>& a, const std::vector<cplx>& b, double cutoff_rel,
                           LsSolveInfo* info = nullptr);

}  // namespace gibbs::recon
