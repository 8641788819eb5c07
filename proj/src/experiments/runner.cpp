// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "experiments/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cond/kappa.hpp"
#include "fourier/coeffs.hpp"
#include "frame/bnm.hpp"
#include "numerics/error.hpp"
#include "recon/maps.hpp"

namespace gibbs::experiments {

namespace {

using fourier::format_double;

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
void parallel_for(int count, int threads, F&& fn) {
  if (count <= 0) return;
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](int i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const int workers = std::min(threads, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");
  return os;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

struct Chain {
  recon::Method method;
  double T;  // NaN for PLS
  std::string t_text() const { return std::isnan(T) ? std::string() : format_double(T); }
};

std::vector<Chain> chains_of(const ExperimentConfig& c) {
  std::vector<Chain> out{{recon::Method::PLS, std::numeric_limits<double>::quiet_NaN()}};
  for (double t : c.T) {
    if (!(t > 1.0)) throw InputError("T must be > 1, got " + format_double(t));
    out.push_back({recon::Method::FE, t});
  }
  return out;
}

// Selections for every m of the grid, each chain ascending from the
// previous answer.
std::vector<std::vector<cond::Selection>> select_chains(const ExperimentConfig& c,
                                                        const std::vector<Chain>& chains,
                                                        const std::vector<int>& grid) {
  std::vector<std::vector<cond::Selection>> out(chains.size());
  parallel_for(static_cast<int>(chains.size()), c.threads, [&](int ci) {
    const Chain& ch = chains[ci];
    cond::SelectOptions opt;
    opt.kappa0 = c.kappa0;
    opt.trials = c.trials;
    opt.seed = c.seed;
    for (int m : grid) {
      auto s = cond::select_max_n(ch.method, m, ch.T, opt);
      opt.start_n = s.n;
      out[ci].push_back(s);
    }
  });
  return out;
}

void check_grid(const ExperimentConfig& c) {
  if (c.m_min < 1 || c.m_max < c.m_min) throw InputError("m grid must satisfy 1 <= m_min <= m_max");
  if (c.stride < 1) throw InputError("stride must be >= 1");
  if (c.threads < 1) throw InputError("threads must be >= 1");
}

}  // namespace

std::string metadata_line(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# gibbs " << GIBBS_VERSION << " figure=" << to_string(c.figure) << " seed=" << c.seed
     << " precision_mode=" << numerics::to_string(c.precision) << " kappa0=" << format_double(c.kappa0)
     << " trials=" << c.trials << " stride=" << c.stride;
  return os.str();
}

RunSummary run_fig1(const ExperimentConfig& c) {
  if (c.n_min < 0 || c.n_max < c.n_min) throw InputError("fig1: need 0 <= n_min <= n_max");
  if (c.threads < 1) throw InputError("threads must be >= 1");
  for (const auto& [a, b] : c.alpha_beta)
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("fig1: alpha and beta must be positive");
  ensure_dir(c.out_dir);
  const double cap = c.precision == numerics::PrecisionMode::Double ? frame::kDoubleBStarCap
                                                                   : frame::kDoubleDoubleBStarCap;
  struct Job {
    int pair;
    int n;
    int m;
    bool keep = false;
    frame::BnmReport report;
  };
  std::vector<Job> jobs;
  for (int p = 0; p < static_cast<int>(c.alpha_beta.size()); ++p) {
    const auto [alpha, beta] = c.alpha_beta[p];
    for (int n = c.n_min; n <= c.n_max; ++n) {
      const long m = std::lround(alpha * std::pow(static_cast<double>(n), beta));
      if (m < 1) continue;
      jobs.push_back({p, n, static_cast<int>(m), false, {}});
    }
  }
  parallel_for(static_cast<int>(jobs.size()), c.threads, [&](int i) {
    Job& job = jobs[i];
    if (!(frame::b_star(job.n, job.m) <= cap)) return;
    job.keep = true;
    job.report = frame::bnm(job.n, job.m, c.precision);
  });

  RunSummary summary;
  const std::string meta = metadata_line(c);
  const std::string summary_path = join_path(c.out_dir, "fig1_summary.csv");
  std::ostringstream sum_os;
  sum_os << meta << "\nalpha,beta,rows,violations,fitted_c\n";
  for (int p = 0; p < static_cast<int>(c.alpha_beta.size()); ++p) {
    const auto [alpha, beta] = c.alpha_beta[p];
    const std::string path =
        join_path(c.out_dir, "fig1_alpha" + short_num(alpha) + "_beta" + short_num(beta) + ".csv");
    auto os = open_out(path);
    os << meta << " alpha=" << format_double(alpha) << " beta=" << format_double(beta) << "\n";
    os << "n,m,B,B_star,scaled_log_B,scaled_log_B_star,B_ge_B_star\n";
    int rows = 0, violations = 0;
    std::string first;
    double sxy = 0.0, sxx = 0.0;
    for (const Job& job : jobs) {
      if (job.pair != p || !job.keep) continue;
      const auto& r = job.report;
      const double scale = std::pow(static_cast<double>(job.n), beta - 2.0);
      const bool ok = r.b_value >= r.b_star;
      os << job.n << ',' << job.m << ',' << format_double(r.b_value) << ',' << format_double(r.b_star)
         << ',' << format_double(scale * std::log(r.b_value)) << ','
         << format_double(scale * std::log(r.b_star)) << ',' << (ok ? 1 : 0) << '\n';
      ++rows;
      if (!ok && violations++ == 0)
        first = "(" + std::to_string(job.n) + "," + std::to_string(job.m) + ")";
      if (std::isfinite(r.b_value) && job.n > 0) {
        const double x = static_cast<double>(job.n) * job.n / job.m;
        sxy += x * std::log(r.b_value);
        sxx += x * x;
      }
    }
    if (!os) throw IoError("write failed for '" + path + "'");
    summary.files.push_back(path);
    if (violations > 0)
      summary.warnings.push_back("fig1 (alpha=" + short_num(alpha) + ", beta=" + short_num(beta) + "): " +
                                 std::to_string(violations) + " of " + std::to_string(rows) +
                                 " rows have B < B*, first at (n,m) = " + first);
    summary.rows += rows;
    summary.violations += violations;
    sum_os << format_double(alpha) << ',' << format_double(beta) << ',' << rows << ',' << violations
           << ',' << (sxx > 0.0 ? format_double(std::exp(sxy / sxx)) : std::string("nan")) << '\n';
  }
  auto os = open_out(summary_path);
  os << sum_os.str();
  summary.files.push_back(summary_path);
  return summary;
}

RunSummary run_fig2(const ExperimentConfig& c) {
  check_grid(c);
  ensure_dir(c.out_dir);
  const auto chains = chains_of(c);
  const auto grid = c.m_grid();
  const auto sel = select_chains(c, chains, grid);

  RunSummary summary;
  const std::string meta = metadata_line(c);
  const std::string path = join_path(c.out_dir, "fig2.csv");
  auto os = open_out(path);
  os << meta << "\nmethod,T,m,n,n_over_sqrt_m,n_over_m,kappa\n";
  const std::string sum_path = join_path(c.out_dir, "fig2_summary.csv");
  auto ss = open_out(sum_path);
  ss << meta << "\nmethod,T,evaluations,non_monotone_pairs\n";
  for (std::size_t ci = 0; ci < chains.size(); ++ci) {
    int evals = 0, nonmono = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const int m = grid[i];
      const auto& s = sel[ci][i];
      os << recon::to_string(chains[ci].method) << ',' << chains[ci].t_text() << ',' << m << ',' << s.n
         << ',' << format_double(s.n / std::sqrt(static_cast<double>(m))) << ','
         << format_double(static_cast<double>(s.n) / m) << ',' << format_double(s.kappa) << '\n';
      evals += s.evaluations;
      nonmono += s.non_monotone;
      ++summary.rows;
    }
    ss << recon::to_string(chains[ci].method) << ',' << chains[ci].t_text() << ',' << evals << ','
       << nonmono << '\n';
    summary.non_monotone += nonmono;
  }
  if (!os || !ss) throw IoError("write failed in '" + c.out_dir + "'");
  summary.files = {path, sum_path};
  if (summary.non_monotone > 0)
    summary.warnings.push_back("fig2: " + std::to_string(summary.non_monotone) +
                               " non-monotone kappa pairs observed during selection");
  return summary;
}

RunSummary run_fig3(const ExperimentConfig& c) {
  check_grid(c);
  if (c.functions.empty()) throw InputError("fig3: no test functions");
  ensure_dir(c.out_dir);
  std::vector<fourier::TestFunction> fns;
  for (const auto& spec : c.functions) fns.push_back(fourier::TestFunction::parse(spec));
  const auto chains = chains_of(c);
  const auto grid = c.m_grid();
  const auto sel = select_chains(c, chains, grid);

  // Coefficients once at the largest m; smaller m slice them.
  const int mmax = grid.back();
  std::vector<fourier::CoeffVec> full(fns.size());
  parallel_for(static_cast<int>(fns.size()), c.threads,
               [&](int f) { full[f] = fourier::coeffs_exact(fns[f], mmax); });

  const int nm = static_cast<int>(grid.size());
  const int nc = static_cast<int>(chains.size());
  // err[(i * nc + ci) * nf + f]
  std::vector<double> err(static_cast<std::size_t>(nm) * nc * fns.size());
  parallel_for(nm * nc, c.threads, [&](int job) {
    const int i = job / nc, ci = job % nc;
    const int m = grid[i];
    const int n = sel[ci][i].n;
    std::vector<fourier::CoeffVec> data;
    for (const auto& fc : full) {
      fourier::CoeffVec s(m);
      for (int j = -m; j <= m; ++j) s[j] = fc[j];
      data.push_back(std::move(s));
    }
    double* out = &err[static_cast<std::size_t>(job) * fns.size()];
    if (chains[ci].method == recon::Method::PLS) {
      recon::PolyLsSolver solver(n, m);
      for (std::size_t f = 0; f < fns.size(); ++f) {
        auto p = solver.solve(data[f]);
        out[f] = recon::l2_error(fns[f], [&](double x) { return p(x); });
      }
    } else {
      recon::FeSolver solver(n, m, chains[ci].T);
      for (std::size_t f = 0; f < fns.size(); ++f) {
        auto phi = solver.solve(data[f]);
        out[f] = recon::l2_error(fns[f], [&](double x) { return phi(x); });
      }
    }
  });

  RunSummary summary;
  const std::string meta = metadata_line(c);
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const std::string path = join_path(c.out_dir, "fig3_" + fns[f].label() + ".csv");
    auto os = open_out(path);
    os << meta << " function=" << fns[f].spec() << "\nm,method,T,n,l2_error\n";
    for (int i = 0; i < nm; ++i)
      for (int ci = 0; ci < nc; ++ci) {
        os << grid[i] << ',' << recon::to_string(chains[ci].method) << ',' << chains[ci].t_text() << ','
           << sel[ci][i].n << ',' << format_double(err[(static_cast<std::size_t>(i) * nc + ci) * fns.size() + f])
           << '\n';
        ++summary.rows;
      }
    if (!os) throw IoError("write failed for '" + path + "'");
    summary.files.push_back(path);
  }
  for (int ci = 0; ci < nc; ++ci)
    for (const auto& s : sel[ci]) summary.non_monotone += s.non_monotone;
  return summary;
}

RunSummary run(const ExperimentConfig& c) {
  switch (c.figure) {
    case Figure::Fig1: return run_fig1(c);
    case Figure::Fig2: return run_fig2(c);
    case Figure::Fig3: return run_fig3(c);
  }
  throw InputError("unknown figure");
}

}  // namespace gibbs::experiments
