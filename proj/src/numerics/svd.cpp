// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "numerics/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "numerics/error.hpp"

namespace gibbs::numerics {

namespace {

template <class T> constexpr double kEps = 2.220446049250313e-16;
template <> constexpr double kEps<dd> = 4.93038065763132e-32;

using std::sqrt;
using std::abs;

inline double real_part(double x) { return x; }
inline dd real_part(const dd& x) { return x; }
inline double real_part(const cplx& x) { return x.real(); }

template <class T>
T dotc(const T* x, const T* y, std::size_t n) {
  T s{};
  for (std::size_t i = 0; i < n; ++i) s += conj_of(x[i]) * y[i];
  return s;
}

template <class T>
real_t<T> norm2sq(const T* x, std::size_t n) {
  real_t<T> s{};
  for (std::size_t i = 0; i < n; ++i) s += abs2_of(x[i]);
  return s;
}

// Householder reflectors H_k = I - tau_k v_k v_k^H stored below the diagonal.
template <class T>
struct PivotedQr {
  Matrix<T> r;                   // n x n upper triangle
  Matrix<T> vs;                  // m x n, column k holds v_k (v_k[k] = 1)
  std::vector<real_t<T>> tau;
  std::vector<std::size_t> perm;  // column k of A*P is column perm[k] of A
};

template <class T>
PivotedQr<T> pivoted_qr(Matrix<T> w) {
  using R = real_t<T>;
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  PivotedQr<T> out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  out.vs = Matrix<T>(m, n);
  out.tau.assign(n, R(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    R best(-1.0);
    for (std::size_t j = k; j < n; ++j) {
      R s = norm2sq(w.col(j) + k, m - k);
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (piv != k) {
      std::swap_ranges(w.col(k), w.col(k) + m, w.col(piv));
      std::swap(out.perm[k], out.perm[piv]);
    }
    T* x = w.col(k) + k;
    const std::size_t len = m - k;
    R xnorm = sqrt(norm2sq(x, len));
    T* v = out.vs.col(k) + k;
    if (xnorm == R(0.0)) {
      v[0] = T(1.0);
      continue;
    }
    R ax0 = sqrt(abs2_of(x[0]));
    T phase = ax0 == R(0.0) ? T(1.0) : x[0] / T(ax0);
    T alpha = -phase * T(xnorm);
    // v = x - alpha e1, scaled so v[0] = 1.
    T v0 = x[0] - alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = x[i] / v0;
    v[0] = T(1.0);
    R vnorm = norm2sq(v, len);
    R tau = R(2.0) / vnorm;
    out.tau[k] = tau;
    x[0] = alpha;
    for (std::size_t i = 1; i < len; ++i) x[i] = T(0.0);
    for (std::size_t j = k + 1; j < n; ++j) {
      T* y = w.col(j) + k;
      T s = dotc(v, y, len) * T(tau);
      for (std::size_t i = 0; i < len; ++i) y[i] -= v[i] * s;
    }
  }
  out.r = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) out.r(i, j) = w(i, j);
  return out;
}

// Applies Q = H_0 H_1 ... H_{n-1} to the m x c matrix M in place.
template <class T>
void apply_q(const PivotedQr<T>& qr, Matrix<T>& mat) {
  const std::size_t m = qr.vs.rows();
  const std::size_t n = qr.vs.cols();
  for (std::size_t kk = n; kk-- > 0;) {
    const T* v = qr.vs.col(kk) + kk;
    const std::size_t len = m - kk;
    if (qr.tau[kk] == real_t<T>(0.0)) continue;
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      T* y = mat.col(j) + kk;
      T s = dotc(v, y, len) * T(qr.tau[kk]);
      for (std::size_t i = 0; i < len; ++i) y[i] -= v[i] * s;
    }
  }
}

// One-sided Jacobi on the columns of x (n x n). Accumulates the rotations
// into vmat when requested.
template <class T>
void one_sided_jacobi(Matrix<T>& x, Matrix<T>* vmat) {
  using R = real_t<T>;
  const std::size_t n = x.cols();
  const std::size_t rows = x.rows();
  const R tol = R(kEps<T> * std::max<double>(1.0, static_cast<double>(rows)));
  std::vector<R> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm2sq(x.col(j), rows);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        R a = norms[p];
        R b = norms[q];
        if (a == R(0.0) || b == R(0.0)) continue;
        T c = dotc(x.col(p), x.col(q), rows);
        R absc = sqrt(abs2_of(c));
        if (!(absc > tol * sqrt(a) * sqrt(b))) continue;
        rotated = true;
        T ph = conj_of(c) / T(absc);
        R zeta = (b - a) / (R(2.0) * absc);
        R t = R(1.0) / (abs(zeta) + sqrt(R(1.0) + zeta * zeta));
        if (zeta < R(0.0)) t = -t;
        R cs = R(1.0) / sqrt(R(1.0) + t * t);
        R sn = cs * t;
        T* xp = x.col(p);
        T* xq = x.col(q);
        for (std::size_t i = 0; i < rows; ++i) {
          T u = xp[i];
          T w = ph * xq[i];
          xp[i] = T(cs) * u - T(sn) * w;
          xq[i] = T(sn) * u + T(cs) * w;
        }
        if (vmat) {
          T* vp = vmat->col(p);
          T* vq = vmat->col(q);
          for (std::size_t i = 0; i < vmat->rows(); ++i) {
            T u = vp[i];
            T w = ph * vq[i];
            vp[i] = T(cs) * u - T(sn) * w;
            vq[i] = T(sn) * u + T(cs) * w;
          }
        }
        norms[p] = norm2sq(xp, rows);
        norms[q] = norm2sq(xq, rows);
      }
    }
    if (!rotated) return;
  }
  throw NumericalError("svd: one-sided Jacobi did not converge in 80 sweeps");
}



template <class T>
void check_input(const Matrix<T>& a) {
  if (a.rows() == 0 || a.cols() == 0) throw InputError("svd: matrix must be non-empty");
  for (const T& v : a.data())
    if (!finite_of(v)) throw InputError("svd: matrix has non-finite entries");
}

// Orthonormal completion of columns whose singular value is exactly zero.
template <class T>
void complete_basis(Matrix<T>& u, const std::vector<bool>& valid) {
  using R = real_t<T>;
  const std::size_t m = u.rows();
  std::size_t cand = 0;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    if (valid[j]) continue;
    for (; cand < m; ++cand) {
      std::vector<T> e(m, T(0.0));
      e[cand] = T(1.0);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < u.cols(); ++k) {
          if (k == j || (!valid[k] && k > j)) continue;
          T s = dotc(u.col(k), e.data(), m);
          for (std::size_t i = 0; i < m; ++i) e[i] -= u(i, k) * s;
        }
      R nrm = sqrt(norm2sq(e.data(), m));
      if (nrm > R(0.5)) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = e[i] / T(nrm);
        ++cand;
        break;
      }
    }
  }
}

// A P = Q R and R^H J = X with orthogonal columns, so
// A = (Q J) diag(|x_k|) (P X diag(1/|x_k|))^H.
template <class T>
SvdResult<T> svd_tall(const Matrix<T>& a, bool want_vectors) {
  using R = real_t<T>;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  PivotedQr<T> qr = pivoted_qr(a);
  Matrix<T> x = conj_transpose(qr.r);
  Matrix<T> jac;
  if (want_vectors) jac = Matrix<T>::identity(n);
  one_sided_jacobi(x, want_vectors ? &jac : nullptr);

  std::vector<R> sig(n);
  for (std::size_t j = 0; j < n; ++j) sig[j] = sqrt(norm2sq(x.col(j), n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[j] < sig[i]; });

  SvdResult<T> res;
  res.sigma.resize(n);
  for (std::size_t k = 0; k < n; ++k) res.sigma[k] = sig[order[k]];
  if (!want_vectors) return res;

  Matrix<T> u(m, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) u(i, k) = jac(i, order[k]);
  apply_q(qr, u);

  Matrix<T> v(n, n);
  std::vector<bool> valid(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = order[k];
    if (sig[j] == R(0.0)) {
      valid[k] = false;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) v(qr.perm[i], k) = x(i, j) / T(sig[j]);
  }
  complete_basis(v, valid);
  res.u = std::move(u);
  res.v = std::move(v);
  return res;
}

}  // namespace

template <class T>
SvdResult<T> svd(const Matrix<T>& a) {
  check_input(a);
  if (a.rows() >= a.cols()) return svd_tall(a, true);
  SvdResult<T> t = svd_tall(conj_transpose(a), true);
  std::swap(t.u, t.v);
  return t;
}

template <class T>
std::vector<real_t<T>> singular_values(const Matrix<T>& a) {
  check_input(a);
  if (a.rows() >= a.cols()) return svd_tall(a, false).sigma;
  return svd_tall(conj_transpose(a), false).sigma;
}

template SvdResult<double> svd(const Matrix<double>&);
template SvdResult<cplx> svd(const Matrix<cplx>&);
template SvdResult<dd> svd(const Matrix<dd>&);
template std::vector<double> singular_values(const Matrix<double>&);
template std::vector<double> singular_values(const Matrix<cplx>&);
template std::vector<dd> singular_values(const Matrix<dd>&);

namespace {

// Cyclic Jacobi for a symmetric dd matrix; returns the largest eigenvalue.
dd symmetric_eig_max(Matrix<dd> a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    dd off(0.0);
    dd diag(0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        (i == j ? diag : off) += a(i, j) * a(i, j);
    if (off.hi <= 1e-64 * diag.hi) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q).hi) <= 1e-34 * std::sqrt(std::abs(a(p, p).hi * a(q, q).hi))) {
          a(p, q) = dd(0.0);
          a(q, p) = dd(0.0);
          continue;
        }
        dd theta = (a(q, q) - a(p, p)) / (a(p, q) * 2.0);
        // theta^2 would overflow; t -> 1/(2 theta)
        dd t = std::abs(theta.hi) > 1e100 ? dd(0.5) / theta
                                          : dd(1.0) / (abs(theta) + sqrt(dd(1.0) + theta * theta));
        if (theta < dd(0.0) && t > dd(0.0)) t = -t;
        dd c = dd(1.0) / sqrt(dd(1.0) + t * t);
        dd s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          dd akp = a(k, p);
          dd akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          dd apk = a(p, k);
          dd aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  dd best = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, a(i, i));
  return best;
}

}  // namespace

double gen_sym_eig_max(const Matrix<dd>& z, const Matrix<dd>& zm) {
  const std::size_t n = z.rows();
  if (n == 0 || z.cols() != n || zm.rows() != n || zm.cols() != n)
    throw InputError("gen_sym_eig_max: matrices must be square and of equal size");
  if (n > 13) throw InputError("gen_sym_eig_max: size " + std::to_string(n) + " exceeds 13");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!isfinite(z(i, j)) || !isfinite(zm(i, j)))
        throw InputError("gen_sym_eig_max: non-finite entries");
  // zm = L L^T.
  Matrix<dd> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    dd d = zm(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > dd(0.0)))
      throw NumericalError("gen_sym_eig_max: Zm is not positive-definite (pivot " +
                           std::to_string(j) + " = " + std::to_string(to_double(d)) + ")");
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      dd s = zm(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  // c = L^{-1} z L^{-T}: solve L y = z column-wise, then L c^T = y^T.
  auto forward = [&](Matrix<dd>& b) {
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t i = 0; i < n; ++i) {
        dd s = b(i, col);
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b(k, col);
        b(i, col) = s / l(i, i);
      }
  };
  Matrix<dd> y = z;
  forward(y);
  Matrix<dd> yt(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) yt(i, j) = y(j, i);
  forward(yt);
  Matrix<dd> c(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c(i, j) = (yt(i, j) + yt(j, i)) * 0.5;
  return to_double(symmetric_eig_max(c));
}

double gen_sym_eig_max(const Matrix<double>& z, const Matrix<double>& zm) {
  Matrix<dd> a(z.rows(), z.cols());
  Matrix<dd> b(zm.rows(), zm.cols());
  for (std::size_t i = 0; i < z.data().size(); ++i) a.data()[i] = z.data()[i];
  for (std::size_t i = 0; i < zm.data().size(); ++i) b.data()[i] = zm.data()[i];
  return gen_sym_eig_max(a, b);
}

}  // namespace gibbs::numerics
