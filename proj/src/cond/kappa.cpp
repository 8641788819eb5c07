// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "cond/kappa.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include "frame/bnm.hpp"
#include "numerics/error.hpp"
#include "numerics/quadrature.hpp"

namespace gibbs::cond {

namespace {

using numerics::cplx;
using numerics::Matrix;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Symmetric grids reduced to x >= 0: weights of +-x are merged.
struct HalfGrid {
  std::vector<double> x;
  std::vector<double> w;
};

HalfGrid trapezoid_half(int nodes) {
  const int half = (nodes - 1) / 2;  // nodes is odd: x_i = i/half
  const double h = 1.0 / half;
  HalfGrid g;
  for (int i = 0; i <= half; ++i) {
    g.x.push_back(i * h);
    g.w.push_back(i == 0 || i == half ? h : 2.0 * h);
  }
  return g;
}

HalfGrid gauss_half(int nodes) {
  numerics::QuadratureRule r = numerics::gauss_legendre(nodes);
  HalfGrid g;
  for (int i = 0; i < nodes; ++i) {
    if (r.nodes[i] < 0.0) continue;
    g.x.push_back(r.nodes[i]);
    g.w.push_back(r.nodes[i] == 0.0 ? r.weights[i] : 2.0 * r.weights[i]);
  }
  return g;
}

// G = diag(sqrt w) B V_r diag(1/sigma_r) where B holds the basis values on
// the grid (row per node).
template <class T>
Matrix<T> weighted_range_map(const Matrix<T>& basis, const std::vector<double>& w,
                             const recon::TruncatedSvdSolver<T>& s) {
  const std::size_t nodes = basis.rows();
  Matrix<T> g(nodes, s.rank());
  for (int k = 0; k < s.rank(); ++k) {
    T* gk = g.col(k);
    const T* vk = s.v().col(k);
    for (std::size_t l = 0; l < basis.cols(); ++l) {
      const T c = vk[l] / s.sigma()[k];
      const T* bl = basis.col(l);
      for (std::size_t i = 0; i < nodes; ++i) gk[i] += bl[i] * c;
    }
  }
  for (int k = 0; k < s.rank(); ++k)
    for (std::size_t i = 0; i < nodes; ++i) g(i, k) *= std::sqrt(w[i]);
  return g;
}

// Even and odd FE basis values on a half grid: 1, sqrt2 cos(k pi x/T) and
// sqrt2 sin(k pi x/T).
void fe_basis(const recon::FeSolver& s, const HalfGrid& g, Matrix<double>& even, Matrix<double>& odd) {
  const int n = s.n();
  even = Matrix<double>(g.x.size(), n + 1);
  odd = Matrix<double>(g.x.size(), std::max(n, 0));
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    even(i, 0) = 1.0;
    for (int k = 1; k <= n; ++k) {
      double th = k * kPi * g.x[i] / s.T();
      even(i, k) = kSqrt2 * std::cos(th);
      odd(i, k - 1) = kSqrt2 * std::sin(th);
    }
  }
}

double batch_norm2(const Matrix<double>& g, const cplx* y) {
  const std::size_t rows = g.rows();
  std::vector<double> re(rows, 0.0);
  std::vector<double> im(rows, 0.0);
  for (std::size_t k = 0; k < g.cols(); ++k) {
    const double* gk = g.col(k);
    const double yr = y[k].real();
    const double yi = y[k].imag();
    for (std::size_t i = 0; i < rows; ++i) {
      re[i] += gk[i] * yr;
      im[i] += gk[i] * yi;
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < rows; ++i) s += re[i] * re[i] + im[i] * im[i];
  return s;
}

double batch_norm2(const Matrix<cplx>& g, const cplx* y) {
  std::vector<cplx> acc(g.rows(), cplx(0.0));
  for (std::size_t k = 0; k < g.cols(); ++k) {
    const cplx* gk = g.col(k);
    for (std::size_t i = 0; i < g.rows(); ++i) acc[i] += gk[i] * y[k];
  }
  double s = 0.0;
  for (const cplx& v : acc) s += std::norm(v);
  return s;
}

// Complex standard Gaussian vector of length r for trial `trial`.
std::vector<cplx> gaussian_direction(int r, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> y(r);
  for (int k = 0; k < r; ++k) {
    double a = normal(rng);
    double b = normal(rng);
    y[k] = cplx(a, b);
  }
  return y;
}

// Max over trials of sqrt(sum_b ||G_b y_b||^2) / ||y||.
template <class T>
double randomized_max(const std::vector<const Matrix<T>*>& blocks, int trials, std::uint64_t seed) {
  int r = 0;
  for (const auto* g : blocks) r += static_cast<int>(g->cols());
  if (r == 0) return 0.0;
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> y = gaussian_direction(r, seed, t);
    double ny = 0.0;
    for (const cplx& v : y) ny += std::norm(v);
    double nf = 0.0;
    int offset = 0;
    for (const auto* g : blocks) {
      nf += batch_norm2(*g, y.data() + offset);
      offset += static_cast<int>(g->cols());
    }
    best = std::max(best, std::sqrt(nf / ny));
  }
  return best;
}

// sigma_max by power iteration on G^H G from a fixed start vector.
template <class T>
double power_norm(const Matrix<T>& g, int max_iters, int& used) {
  const std::size_t r = g.cols();
  if (r == 0) return 0.0;
  std::vector<T> v(r);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& x : v) x = T(normal(rng));
  double prev = 0.0;
  double est = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    double nv = 0.0;
    for (const T& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (T& x : v) x /= nv;
    std::vector<T> w = numerics::multiply(g, v);
    double nw = 0.0;
    for (const T& x : w) nw += std::norm(x);
    est = std::sqrt(nw);
    std::vector<T> next(r, T(0.0));
    for (std::size_t k = 0; k < r; ++k) {
      const T* gk = g.col(k);
      T s = T(0.0);
      for (std::size_t i = 0; i < g.rows(); ++i) s += numerics::conj_of(gk[i]) * w[i];
      next[k] = s;
    }
    v = std::move(next);
    used = it;
    if (it >= 10 && std::abs(est - prev) <= 1e-10 * est) break;
    prev = est;
  }
  return est;
}

void check_gram(const recon::FeSolver& s, const HalfGrid& g) {
  // Diagonal of the Gram matrix of 1, sqrt2 cos, sqrt2 sin against closed forms.
  for (int k = 0; k <= s.n(); ++k) {
    double a = k * kPi / s.T();
    double qc = 0.0;
    double qs = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double c = k == 0 ? 1.0 : kSqrt2 * std::cos(a * g.x[i]);
      double sn = kSqrt2 * std::sin(a * g.x[i]);
      qc += g.w[i] * c * c;
      qs += g.w[i] * sn * sn;
    }
    double ec = k == 0 ? 2.0 : 2.0 + std::sin(2.0 * a) / a;
    double es = k == 0 ? 0.0 : 2.0 - std::sin(2.0 * a) / a;
    if (std::abs(qc - ec) > 1e-10 * 2.0 || std::abs(qs - es) > 1e-10 * 2.0)
      throw NumericalError("kappa_fe_power: Gram factor inexact for mode k=" + std::to_string(k));
  }
}

ConditionReport fe_report(const recon::FeSolver& s) {
  ConditionReport r;
  r.method = Method::FE;
  r.n = s.n();
  r.m = s.m();
  r.T = s.T();
  return r;
}

}  // namespace

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::SigmaMinExact: return "sigma_min_exact";
    case Estimator::Randomized: return "randomized";
    case Estimator::PowerIteration: return "power_iteration";
  }
  return "?";
}

ConditionReport kappa_pls(int n, int m) {
  if (n < 0 || n > m) throw InputError("kappa_pls: need 0 <= n <= m");
  ConditionReport r;
  r.method = Method::PLS;
  r.n = n;
  r.m = m;
  r.kappa = frame::bnm(2 * n, m, frame::required_precision(2 * n, m)).b_value;
  r.estimator = Estimator::SigmaMinExact;
  return r;
}

ConditionReport kappa_fe_randomized(const recon::FeSolver& s, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("kappa_fe_randomized: trials must be >= 1");
  HalfGrid g = trapezoid_half(kTrapezoidNodes);
  Matrix<double> be;
  Matrix<double> bo;
  fe_basis(s, g, be, bo);
  Matrix<double> ge = weighted_range_map(be, g.w, s.even());
  std::vector<const Matrix<double>*> blocks{&ge};
  Matrix<double> go;
  if (s.n() > 0 && s.m() > 0) {
    go = weighted_range_map(bo, g.w, s.odd());
    blocks.push_back(&go);
  }
  ConditionReport r = fe_report(s);
  r.kappa = randomized_max(blocks, trials, seed);
  r.estimator = Estimator::Randomized;
  r.trials = trials;
  r.seed = seed;
  r.quadrature_nodes = kTrapezoidNodes;
  return r;
}

ConditionReport kappa_fe_randomized(int n, int m, double T, int trials, std::uint64_t seed) {
  return kappa_fe_randomized(recon::FeSolver(n, m, T), trials, seed);
}

ConditionReport kappa_fe_power(const recon::FeSolver& s, int max_iters) {
  if (max_iters < 10) throw InputError("kappa_fe_power: iterations must be >= 10");
  int nodes = std::max(200, static_cast<int>(std::ceil(2.0 * s.n() * kPi / s.T())) + 100);
  HalfGrid g = gauss_half(nodes);
  check_gram(s, g);
  Matrix<double> be;
  Matrix<double> bo;
  fe_basis(s, g, be, bo);
  int used_e = 0;
  int used_o = 0;
  double ne = power_norm(weighted_range_map(be, g.w, s.even()), max_iters, used_e);
  double no = 0.0;
  if (s.n() > 0 && s.m() > 0) no = power_norm(weighted_range_map(bo, g.w, s.odd()), max_iters, used_o);
  ConditionReport r = fe_report(s);
  r.kappa = std::max(ne, no);
  r.estimator = Estimator::PowerIteration;
  r.iterations = std::max(used_e, used_o);
  r.quadrature_nodes = nodes;
  return r;
}

ConditionReport kappa_fe_power(int n, int m, double T, int max_iters) {
  return kappa_fe_power(recon::FeSolver(n, m, T), max_iters);
}

namespace {

// Legendre basis with the column phases of the complex Legendre-Fourier
// matrix folded in, on a full grid.
Matrix<cplx> pls_basis(const recon::PolyLsSolver& s, const std::vector<double>& x) {
  static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const int d = s.degree();
  Matrix<cplx> b(x.size(), d + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> p = poly::legendre_orthonormal_all(d, x[i]);
    for (int k = 0; k <= d; ++k) b(i, k) = p[k] * i_pow[k % 4];
  }
  return b;
}

Matrix<cplx> pls_range_map(const recon::PolyLsSolver& s, const std::vector<double>& x,
                           const std::vector<double>& w) {
  Matrix<cplx> basis = pls_basis(s, x);
  const auto& core = s.core();
  Matrix<cplx> g(x.size(), core.rank());
  for (int k = 0; k < core.rank(); ++k)
    for (std::size_t l = 0; l < basis.cols(); ++l) {
      cplx c = core.v()(l, k) / core.sigma()[k];
      for (std::size_t i = 0; i < x.size(); ++i) g(i, k) += basis(i, l) * c;
    }
  for (int k = 0; k < core.rank(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i) g(i, k) *= std::sqrt(w[i]);
  return g;
}

}  // namespace

ConditionReport kappa_pls_randomized(int n, int m, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("kappa_pls_randomized: trials must be >= 1");
  recon::PolyLsSolver s(n, m, 0.0);
  std::vector<double> x(kTrapezoidNodes);
  std::vector<double> w(kTrapezoidNodes);
  const int half = (kTrapezoidNodes - 1) / 2;
  for (int i = 0; i < kTrapezoidNodes; ++i) {
    x[i] = -1.0 + static_cast<double>(i) / half;
    w[i] = (i == 0 || i == kTrapezoidNodes - 1) ? 0.5 / half : 1.0 / half;
  }
  Matrix<cplx> g = pls_range_map(s, x, w);
  ConditionReport r;
  r.method = Method::PLS;
  r.n = n;
  r.m = m;
  r.kappa = randomized_max<cplx>({&g}, trials, seed);
  r.estimator = Estimator::Randomized;
  r.trials = trials;
  r.seed = seed;
  r.quadrature_nodes = kTrapezoidNodes;
  return r;
}

ConditionReport kappa_pls_power(int n, int m, int max_iters) {
  if (max_iters < 10) throw InputError("kappa_pls_power: iterations must be >= 10");
  recon::PolyLsSolver s(n, m, 0.0);
  const int nodes = 2 * n + 20;
  numerics::QuadratureRule rule = numerics::gauss_legendre(nodes);
  Matrix<cplx> g = pls_range_map(s, rule.nodes, rule.weights);
  ConditionReport r;
  r.method = Method::PLS;
  r.n = n;
  r.m = m;
  int used = 0;
  r.kappa = power_norm(g, max_iters, used);
  r.estimator = Estimator::PowerIteration;
  r.iterations = used;
  r.quadrature_nodes = nodes;
  return r;
}

Selection select_max_n(Method method, int m, double T, const SelectOptions& opt) {
  if (!(opt.kappa0 > 1.0)) throw InputError("select_max_n: kappa0 must be > 1");
  if (m < 0) throw InputError("select_max_n: m must be >= 0");
  if (method == Method::IPRM) throw InputError("select_max_n: IPRM has no free degree");
  const int cap = opt.max_n >= 0 ? opt.max_n : m;
  Selection sel;
  std::map<int, double> cache;
  auto kappa = [&](int n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double k = method == Method::PLS ? kappa_pls(n, m).kappa
                                     : kappa_fe_randomized(n, m, T, opt.trials, opt.seed).kappa;
    ++sel.evaluations;
    cache.emplace(n, k);
    return k;
  };
  int n = std::clamp(opt.start_n, 0, cap);
  if (n > 0 && kappa(n) > opt.kappa0) {
    while (n > 0 && kappa(n) > opt.kappa0) --n;
  } else {
    while (true) {
      int best = -1;
      for (int d = 1; d <= opt.window && n + d <= cap; ++d)
        if (kappa(n + d) <= opt.kappa0) best = n + d;
      if (best < 0) break;
      n = best;
    }
  }
  sel.n = n;
  sel.kappa = n == 0 && !cache.count(0) ? 1.0 : kappa(n);
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    auto nx = std::next(it);
    if (nx != cache.end() && nx->first == it->first + 1 && nx->second < it->second) ++sel.non_monotone;
  }
  return sel;
}

void write_condition_csv(const std::vector<ConditionReport>& rows, std::ostream& os) {
  os << "method,n,m,T,kappa,estimator,t,seed,quadrature_nodes\n";
  for (const ConditionReport& r : rows) {
    os << recon::to_string(r.method) << ',' << r.n << ',' << r.m << ',';
    if (!std::isnan(r.T)) os << fourier::format_double(r.T);
    os << ',' << fourier::format_double(r.kappa) << ',' << to_string(r.estimator) << ',' << r.trials << ','
       << r.seed << ',' << r.quadrature_nodes << '\n';
  }
}

}  // namespace gibbs::cond
