// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "gibbs/gibbs.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "cond/kappa.hpp"
#include "experiments/runner.hpp"
#include "fourier/coeffs.hpp"
#include "frame/bnm.hpp"
#include "json.hpp"
#include "numerics/error.hpp"
#include "recon/maps.hpp"

struct gibbs_coeffs {
  gibbs::fourier::CoeffVec c;
};

struct gibbs_recon {
  std::variant<gibbs::poly::LegendrePoly, gibbs::recon::ExtensionFn> fn;
  gibbs::recon::LsSolveInfo info;
};

struct gibbs_config {
  gibbs::experiments::ExperimentConfig cfg;
};

namespace {

using namespace gibbs;

thread_local std::string g_last_error;

gibbs_status fail(gibbs_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
gibbs_status guard(F&& f) {
  try {
    f();
    return GIBBS_OK;
  } catch (const NumericalError& e) {
    return fail(GIBBS_ERR_NUMERIC, e.what());
  } catch (const IoError& e) {
    return fail(GIBBS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GIBBS_ERR_INPUT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(GIBBS_ERR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GIBBS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GIBBS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GIBBS_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw InputError(std::string(what) + " must not be null");
}

numerics::PrecisionMode to_mode(gibbs_precision p) {
  switch (p) {
    case GIBBS_PRECISION_DOUBLE: return numerics::PrecisionMode::Double;
    case GIBBS_PRECISION_DD: return numerics::PrecisionMode::DoubleDouble;
  }
  throw InputError("unknown precision mode");
}

gibbs_precision from_mode(numerics::PrecisionMode p) {
  return p == numerics::PrecisionMode::Double ? GIBBS_PRECISION_DOUBLE : GIBBS_PRECISION_DD;
}

recon::Method to_method(gibbs_method m) {
  switch (m) {
    case GIBBS_METHOD_IPRM: return recon::Method::IPRM;
    case GIBBS_METHOD_PLS: return recon::Method::PLS;
    case GIBBS_METHOD_FE: return recon::Method::FE;
  }
  throw InputError("unknown method");
}

gibbs_method from_method(recon::Method m) {
  switch (m) {
    case recon::Method::IPRM: return GIBBS_METHOD_IPRM;
    case recon::Method::PLS: return GIBBS_METHOD_PLS;
    case recon::Method::FE: return GIBBS_METHOD_FE;
  }
  return GIBBS_METHOD_PLS;
}

void fill(const cond::ConditionReport& r, gibbs_condition_report* out) {
  out->method = from_method(r.method);
  out->n = r.n;
  out->m = r.m;
  out->T = r.T;
  out->kappa = r.kappa;
  out->estimator = r.estimator == cond::Estimator::SigmaMinExact ? GIBBS_ESTIMATOR_SIGMA_MIN_EXACT
                   : r.estimator == cond::Estimator::Randomized  ? GIBBS_ESTIMATOR_RANDOMIZED
                                                                  : GIBBS_ESTIMATOR_POWER_ITERATION;
  out->trials = r.trials;
  out->seed = r.seed;
  out->iterations = r.iterations;
  out->quadrature_nodes = r.quadrature_nodes;
}

std::vector<std::string> split_list(const char* s) {
  std::vector<std::string> out;
  if (s == nullptr || *s == '\0') return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void report(gibbs_log_fn log, void* user, const std::string& msg) {
  if (log) log(msg.c_str(), user);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* gibbs_version(void) { return GIBBS_VERSION; }
const char* gibbs_last_error(void) { return g_last_error.c_str(); }
void gibbs_string_free(char* s) { std::free(s); }

gibbs_status gibbs_parse_precision(const char* text, gibbs_precision* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = from_mode(numerics::parse_precision(text));
  });
}

gibbs_status gibbs_parse_method(const char* text, gibbs_method* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = from_method(recon::parse_method(text));
  });
}

gibbs_status gibbs_bnm(int n, int m, gibbs_precision precision, gibbs_bnm_report* out) {
  return guard([&] {
    need(out, "out");
    const auto r = frame::bnm(n, m, to_mode(precision));
    *out = {r.n, r.m, r.b_value, r.b_star, r.sigma_min, from_mode(r.precision)};
  });
}

gibbs_status gibbs_required_precision(int n, int m, gibbs_precision* out) {
  return guard([&] {
    need(out, "out");
    *out = from_mode(frame::required_precision(n, m));
  });
}

gibbs_status gibbs_b_star(int n, int m, double* out) {
  return guard([&] {
    need(out, "out");
    if (n < 0 || m < 0) throw InputError("b_star: n and m must be >= 0");
    *out = frame::b_star(n, m);
  });
}

gibbs_status gibbs_witness_ratio(int q, int m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = frame::witness_ratio(q, m).value;
  });
}

gibbs_status gibbs_witness_lower_bound(int q, int m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = frame::witness_lower_bound(q, m);
  });
}

gibbs_status gibbs_sup_zeta_bound(int n, int m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = frame::sup_zeta_bound(n, m);
  });
}

gibbs_status gibbs_kappa_pls(int n, int m, gibbs_condition_report* out) {
  return guard([&] {
    need(out, "out");
    fill(cond::kappa_pls(n, m), out);
  });
}

gibbs_status gibbs_kappa_pls_randomized(int n, int m, int trials, uint64_t seed, gibbs_condition_report* out) {
  return guard([&] {
    need(out, "out");
    fill(cond::kappa_pls_randomized(n, m, trials, seed), out);
  });
}

gibbs_status gibbs_kappa_pls_power(int n, int m, int max_iters, gibbs_condition_report* out) {
  return guard([&] {
    need(out, "out");
    fill(cond::kappa_pls_power(n, m, max_iters), out);
  });
}

gibbs_status gibbs_kappa_fe_randomized(int n, int m, double T, int trials, uint64_t seed,
                                       gibbs_condition_report* out) {
  return guard([&] {
    need(out, "out");
    fill(cond::kappa_fe_randomized(n, m, T, trials, seed), out);
  });
}

gibbs_status gibbs_kappa_fe_power(int n, int m, double T, int max_iters, gibbs_condition_report* out) {
  return guard([&] {
    need(out, "out");
    fill(cond::kappa_fe_power(n, m, T, max_iters), out);
  });
}

gibbs_status gibbs_select_max_n(gibbs_method method, int m, double T, double kappa0, int trials, uint64_t seed,
                                int start_n, gibbs_selection* out) {
  return guard([&] {
    need(out, "out");
    cond::SelectOptions opt;
    opt.kappa0 = kappa0;
    opt.trials = trials;
    opt.seed = seed;
    opt.start_n = start_n;
    const auto s = cond::select_max_n(to_method(method), m, T, opt);
    *out = {s.n, s.kappa, s.evaluations, s.non_monotone};
  });
}

gibbs_status gibbs_coeffs_from_function(const char* spec, int m, gibbs_coeffs** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    if (m < 0) throw InputError("m must be >= 0");
    auto f = fourier::TestFunction::parse(spec);
    *out = new gibbs_coeffs{fourier::coeffs_exact(f, m)};
  });
}

gibbs_status gibbs_coeffs_from_values(int m, const double* re, const double* im, gibbs_coeffs** out) {
  return guard([&] {
    need(re, "re");
    need(im, "im");
    need(out, "out");
    if (m < 0) throw InputError("m must be >= 0");
    std::vector<numerics::cplx> v(2 * static_cast<std::size_t>(m) + 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re[i], im[i]};
    *out = new gibbs_coeffs{fourier::CoeffVec(m, std::move(v))};
  });
}

gibbs_status gibbs_coeffs_read_csv(const char* path, gibbs_coeffs** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new gibbs_coeffs{fourier::read_coeffs_csv(std::string(path))};
  });
}

gibbs_status gibbs_coeffs_write_csv(const gibbs_coeffs* c, const char* path) {
  return guard([&] {
    need(c, "coeffs");
    need(path, "path");
    fourier::write_coeffs_csv(c->c, std::string(path));
  });
}

int gibbs_coeffs_m(const gibbs_coeffs* c) { return c ? c->c.m() : -1; }

gibbs_status gibbs_coeffs_get(const gibbs_coeffs* c, int j, double* re, double* im) {
  return guard([&] {
    need(c, "coeffs");
    need(re, "re");
    need(im, "im");
    if (j < -c->c.m() || j > c->c.m()) throw InputError("index j out of range");
    *re = c->c[j].real();
    *im = c->c[j].imag();
  });
}

void gibbs_coeffs_free(gibbs_coeffs* c) { delete c; }

gibbs_status gibbs_reconstruct(const gibbs_coeffs* c, gibbs_method method, int n, double T, gibbs_recon** out) {
  return guard([&] {
    need(c, "coeffs");
    need(out, "out");
    auto r = std::make_unique<gibbs_recon>();
    switch (to_method(method)) {
      case recon::Method::IPRM: r->fn = recon::iprm(c->c, &r->info); break;
      case recon::Method::PLS: r->fn = recon::poly_ls(c->c, n, &r->info); break;
      case recon::Method::FE: {
        auto [phi, info] = recon::fourier_extension(c->c, n, T);
        r->fn = std::move(phi);
        r->info = info;
        break;
      }
    }
    *out = r.release();
  });
}

gibbs_status gibbs_recon_eval(const gibbs_recon* r, double x, double* re, double* im) {
  return guard([&] {
    need(r, "recon");
    need(re, "re");
    need(im, "im");
    const numerics::cplx v = std::visit([x](const auto& f) { return f(x); }, r->fn);
    *re = v.real();
    *im = v.imag();
  });
}

int gibbs_recon_size(const gibbs_recon* r) {
  if (!r) return -1;
  if (auto p = std::get_if<poly::LegendrePoly>(&r->fn)) return static_cast<int>(p->coeffs.size());
  return static_cast<int>(std::get<recon::ExtensionFn>(r->fn).a.size());
}

gibbs_status gibbs_recon_coefficient(const gibbs_recon* r, int index, double* re, double* im) {
  return guard([&] {
    need(r, "recon");
    need(re, "re");
    need(im, "im");
    if (index < 0 || index >= gibbs_recon_size(r)) throw InputError("coefficient index out of range");
    numerics::cplx v;
    if (auto p = std::get_if<poly::LegendrePoly>(&r->fn))
      v = p->coeffs[index];
    else
      v = std::get<recon::ExtensionFn>(r->fn).a[index];
    *re = v.real();
    *im = v.imag();
  });
}

gibbs_status gibbs_recon_info(const gibbs_recon* r, int* rank_used, double* residual_norm) {
  return guard([&] {
    need(r, "recon");
    if (rank_used) *rank_used = r->info.rank_used;
    if (residual_norm) *residual_norm = r->info.residual_norm;
  });
}

gibbs_status gibbs_recon_l2_error(const gibbs_recon* r, const char* function_spec, double* out) {
  return guard([&] {
    need(r, "recon");
    need(function_spec, "function_spec");
    need(out, "out");
    const auto f = fourier::TestFunction::parse(function_spec);
    *out = recon::l2_error(f, [r](double x) { return std::visit([x](const auto& g) { return g(x); }, r->fn); });
  });
}

void gibbs_recon_free(gibbs_recon* r) { delete r; }

gibbs_status gibbs_config_default(const char* figure, gibbs_config** out) {
  return guard([&] {
    need(figure, "figure");
    need(out, "out");
    *out = new gibbs_config{experiments::ExperimentConfig::defaults(experiments::parse_figure(figure))};
  });
}

gibbs_status gibbs_config_load(const char* path, gibbs_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new gibbs_config{experiments::ExperimentConfig::load(path)};
  });
}

gibbs_status gibbs_config_from_json(const char* text, gibbs_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new gibbs_config{experiments::ExperimentConfig::from_json(text)};
  });
}

gibbs_status gibbs_config_to_json(const gibbs_config* cfg, char** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = dup_string(cfg->cfg.to_json());
  });
}

gibbs_status gibbs_config_set(gibbs_config* cfg, const char* key, const char* json_value) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    need(json_value, "json_value");
    nlohmann::json doc = nlohmann::json::parse(cfg->cfg.to_json());
    if (!doc.contains(key)) throw InputError(std::string("config: unknown key '") + key + "'");
    try {
      doc[key] = nlohmann::json::parse(json_value);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("config: value for '") + key + "': " + e.what());
    }
    cfg->cfg = experiments::ExperimentConfig::from_json(doc.dump());
  });
}

void gibbs_config_free(gibbs_config* cfg) { delete cfg; }

gibbs_status gibbs_run(const gibbs_config* cfg, gibbs_log_fn log, void* user, gibbs_run_summary* out) {
  return guard([&] {
    need(cfg, "config");
    const auto s = experiments::run(cfg->cfg);
    for (const auto& w : s.warnings) report(log, user, "warning: " + w);
    for (const auto& f : s.files) report(log, user, "wrote " + f);
    if (out) *out = {s.rows, static_cast<int>(s.files.size()), s.violations, s.non_monotone};
  });
}

gibbs_status gibbs_recover(const gibbs_recover_request* req, gibbs_log_fn log, void* user,
                           gibbs_recover_result* out) {
  return guard([&] {
    need(req, "request");
    experiments::RecoverRequest r;
    if (req->coeff_file) r.coeff_file = req->coeff_file;
    if (req->function) r.function = req->function;
    r.m = req->m;
    r.method = recon::to_string(to_method(req->method));
    r.n = req->n;
    r.T = req->T;
    r.out_dir = req->out_dir ? req->out_dir : ".";
    r.seed = req->seed;
    const auto res = experiments::recover(r);
    report(log, user, "wrote " + res.json_path);
    report(log, user, "wrote " + res.samples_path);
    if (out) *out = {res.l2_error, res.info.rank_used, res.info.residual_norm};
  });
}

gibbs_status gibbs_emit_svg(const char* csv_path, const char* x, const char* y, const char* group, int log_y,
                            const char* title, const char* out_path, gibbs_log_fn log, void* user) {
  return guard([&] {
    need(csv_path, "csv_path");
    need(x, "x");
    need(y, "y");
    need(out_path, "out_path");
    experiments::SvgRequest req;
    req.csv_path = csv_path;
    req.x = x;
    req.y = split_list(y);
    req.group = split_list(group);
    req.log_y = log_y != 0;
    req.title = title ? title : "";
    req.out_path = out_path;
    for (const auto& w : experiments::emit_svg(req)) report(log, user, "warning: " + w);
    report(log, user, "wrote " + req.out_path);
  });
}

}  // extern "C"
