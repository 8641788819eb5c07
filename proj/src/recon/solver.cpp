// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "recon/solver.hpp"

#include <cmath>

#include "numerics/error.hpp"

namespace gibbs::recon {

template <class T>
TruncatedSvdSolver<T>::TruncatedSvdSolver(const Matrix<T>& a, double cutoff_rel) : a_(a) {
  if (!(cutoff_rel >= 0.0 && cutoff_rel < 1.0))
    throw InputError("ls_solve: cutoff must lie in [0, 1)");
  cutoff_ = cutoff_rel;
  numerics::SvdResult<T> s = numerics::svd(a);
  u_ = std::move(s.u);
  v_ = std::move(s.v);
  sigma_.assign(s.sigma.begin(), s.sigma.end());
  const double smax = sigma_.empty() ? 0.0 : sigma_.front();
  truncate_below(smax > 0.0 ? (cutoff_rel > 0.0 ? cutoff_rel * smax : 0.0) : 1.0);
}

template <class T>
void TruncatedSvdSolver<T>::truncate_below(double threshold) {
  rank_ = 0;
  for (double s : sigma_) {
    if (s > 0.0 && s >= threshold) ++rank_;
  }
}

template <class T>
std::vector<cplx> TruncatedSvdSolver<T>::from_range(const cplx* y) const {
  std::vector<cplx> x(v_.rows(), cplx(0.0));
  for (int k = 0; k < rank_; ++k) {
    cplx w = y[k] / sigma_[k];
    const T* vk = v_.col(k);
    for (std::size_t i = 0; i < v_.rows(); ++i) x[i] += vk[i] * w;
  }
  return x;
}

template <class T>
std::vector<cplx> TruncatedSvdSolver<T>::solve(const std::vector<cplx>& b, LsSolveInfo* info) const {
  if (b.size() != u_.rows()) throw InputError("ls_solve: right-hand side has the wrong length");
  std::vector<cplx> y(rank_);
  for (int k = 0; k < rank_; ++k) {
    const T* uk = u_.col(k);
    cplx s = 0.0;
    for (std::size_t i = 0; i < u_.rows(); ++i) s += numerics::conj_of(uk[i]) * b[i];
    y[k] = s;
  }
  std::vector<cplx> x = from_range(y.data());
  if (info) {
    info->rank_used = rank_;
    info->svd_cutoff = cutoff_;
    double r = 0.0;
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      cplx s = -b[i];
      for (std::size_t j = 0; j < a_.cols(); ++j) s += a_(i, j) * x[j];
      r += std::norm(s);
    }
    info->residual_norm = std::sqrt(r);
  }
  return x;
}

template class TruncatedSvdSolver<double>;
template class TruncatedSvdSolver<cplx>;

std::vector<cplx> ls_solve(const Matrix<cplx>& a, const std::vector<cplx>& b, double cutoff_rel,
                           LsSolveInfo* info) {
  return TruncatedSvdSolver<cplx>(a, cutoff_rel).solve(b, info);
}

std::vector<cplx> ls_solve(const Matrix<double>& a, const std::vector<cplx>& b, double cutoff_rel,
                           LsSolveInfo* info) {
  return TruncatedSvdSolver<double>(a, cutoff_rel).solve(b, info);
}

}  // namespace gibbs::recon
