// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
// Command-line driver. Uses the C interface only.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gibbs/gibbs.h"

namespace {

int exit_code(gibbs_status s) {
  switch (s) {
    case GIBBS_OK: return 0;
    case GIBBS_ERR_INPUT:
    case GIBBS_ERR_IO: return 2;
    default: return 1;
  }
}

int report_failure(gibbs_status s) {
  std::fprintf(stderr, "gibbs: error: %s\n", gibbs_last_error());
  return exit_code(s);
}

void log_stderr(const char* msg, void*) { std::fprintf(stderr, "%s\n", msg); }

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string json_list(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, std::string>)
      out += json_string(v[i]);
    else
      out += g17(v[i]);
  }
  return out + "]";
}

struct FigureOptions {
  std::string config;
  std::string out;
  int n = 0, n_min = 0, m = 0, m_min = 0, stride = 1, trials = 100, threads = 1;
  std::uint64_t seed = 0;
  double kappa0 = 10.0;
  std::vector<double> T;
  std::vector<std::string> functions;
  std::string precision;
};

struct Flags {
  CLI::Option* n = nullptr;
  CLI::Option* n_min = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* m_min = nullptr;
  CLI::Option* stride = nullptr;
  CLI::Option* T = nullptr;
  CLI::Option* kappa0 = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* precision = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* functions = nullptr;
};

Flags add_figure_flags(CLI::App* sub, FigureOptions& o, const std::string& figure) {
  Flags f;
  sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
  f.out = sub->add_option("--out", o.out, "output directory");
  f.seed = sub->add_option("--seed", o.seed, "random seed");
  f.precision = sub->add_option("--precision", o.precision, "arithmetic for B_{n,m}")
                    ->check(CLI::IsMember({"double", "dd"}));
  f.threads = sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  if (figure == "fig1") {
    f.n = sub->add_option("--n", o.n, "largest n")->check(CLI::NonNegativeNumber);
    f.n_min = sub->add_option("--n-min", o.n_min, "smallest n")->check(CLI::NonNegativeNumber);
  } else {
    f.m = sub->add_option("--m", o.m, "largest m")->check(CLI::PositiveNumber);
    f.m_min = sub->add_option("--m-min", o.m_min, "smallest m")->check(CLI::PositiveNumber);
    f.stride = sub->add_option("--stride", o.stride, "m step")->check(CLI::PositiveNumber);
    f.T = sub->add_option("--T", o.T, "extension parameters T > 1");
    f.kappa0 = sub->add_option("--kappa0", o.kappa0, "condition-number threshold");
    f.trials = sub->add_option("--trials", o.trials, "randomized trials")->check(CLI::PositiveNumber);
    if (figure == "fig3") f.functions = sub->add_option("--function", o.functions, "test-function spec");
  }
  return f;
}

int run_figure(const std::string& figure, const FigureOptions& o, const Flags& f) {
  gibbs_config* cfg = nullptr;
  gibbs_status s = o.config.empty() ? gibbs_config_default(figure.c_str(), &cfg)
                                    : gibbs_config_load(o.config.c_str(), &cfg);
  if (s != GIBBS_OK) return report_failure(s);
  std::vector<std::pair<std::string, std::string>> sets;
  sets.emplace_back("figure", json_string(figure));
  auto given = [](CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
  if (given(f.out)) sets.emplace_back("out_dir", json_string(o.out));
  if (given(f.seed)) sets.emplace_back("seed", std::to_string(o.seed));
  if (given(f.precision)) sets.emplace_back("precision_mode", json_string(o.precision));
  if (given(f.threads)) sets.emplace_back("threads", std::to_string(o.threads));
  if (given(f.n)) sets.emplace_back("n_max", std::to_string(o.n));
  if (given(f.n_min)) sets.emplace_back("n_min", std::to_string(o.n_min));
  if (given(f.m)) sets.emplace_back("m_max", std::to_string(o.m));
  if (given(f.m_min)) sets.emplace_back("m_min", std::to_string(o.m_min));
  if (given(f.stride)) sets.emplace_back("stride", std::to_string(o.stride));
  if (given(f.T)) sets.emplace_back("T", json_list(o.T));
  if (given(f.kappa0)) sets.emplace_back("kappa0", g17(o.kappa0));
  if (given(f.trials)) sets.emplace_back("trials", std::to_string(o.trials));
  if (given(f.functions)) sets.emplace_back("functions", json_list(o.functions));

  char* text = nullptr;
  if (!o.config.empty()) {
    // A config file for another figure is rejected rather than silently relabelled.
    s = gibbs_config_to_json(cfg, &text);
    if (s == GIBBS_OK) {
      const bool match = std::string(text).find("\"figure\": " + json_string(figure)) != std::string::npos;
      gibbs_string_free(text);
      if (!match) {
        gibbs_config_free(cfg);
        std::fprintf(stderr, "gibbs: error: config file is not for %s\n", figure.c_str());
        return 2;
      }
    }
  }
  for (const auto& [key, value] : sets) {
    s = gibbs_config_set(cfg, key.c_str(), value.c_str());
    if (s != GIBBS_OK) {
      gibbs_config_free(cfg);
      return report_failure(s);
    }
  }
  gibbs_run_summary summary{};
  s = gibbs_run(cfg, log_stderr, nullptr, &summary);
  gibbs_config_free(cfg);
  if (s != GIBBS_OK) return report_failure(s);
  std::fprintf(stderr, "%s: %d rows in %d files", figure.c_str(), summary.rows, summary.files);
  if (figure == "fig1") std::fprintf(stderr, ", %d rows with B < B*", summary.violations);
  else std::fprintf(stderr, ", %d non-monotone kappa pairs", summary.non_monotone);
  std::fprintf(stderr, "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable reconstruction from Fourier coefficients: frame bounds, condition numbers, figures"};
  app.set_version_flag("--version", std::string(gibbs_version()));
  app.require_subcommand(1);

  FigureOptions fo[3];
  Flags ff[3];
  const char* names[3] = {"fig1", "fig2", "fig3"};
  const char* about[3] = {"B_{n,m} against its lower bound on the three (alpha, beta) scalings",
                          "selected n for PLS and FE under kappa <= kappa0",
                          "L2 errors of PLS and FE for the test functions"};
  CLI::App* fig[3];
  for (int i = 0; i < 3; ++i) {
    fig[i] = app.add_subcommand(names[i], about[i]);
    ff[i] = add_figure_flags(fig[i], fo[i], names[i]);
  }

  auto* rec = app.add_subcommand("recover", "reconstruct from coefficients and write JSON plus samples");
  std::string coeff_file, function, method = "PLS", rec_out = ".";
  int rec_m = -1, rec_n = 0;
  double rec_T = 2.0;
  std::uint64_t rec_seed = 0;
  auto* o_file = rec->add_option("--coeffs", coeff_file, "CoeffVec CSV (j,re,im)")->check(CLI::ExistingFile);
  auto* o_fn = rec->add_option("--function", function, "test-function spec, e.g. runge:5");
  o_file->excludes(o_fn);
  rec->add_option("--m", rec_m, "coefficient count parameter (required with --function)");
  rec->add_option("--method", method, "IPRM, PLS or FE")->check(CLI::IsMember({"IPRM", "PLS", "FE", "iprm", "pls", "fe"}));
  rec->add_option("--n", rec_n, "PLS degree parameter (degree 2n) or FE modes");
  rec->add_option("--T", rec_T, "FE extension parameter");
  rec->add_option("--out", rec_out, "output directory");
  rec->add_option("--seed", rec_seed, "recorded in the metadata line");

  auto* bnm = app.add_subcommand("bnm", "B_{n,m}, its lower bound B* and sigma_min");
  int b_n = 0, b_m = 0;
  std::string b_prec;
  bnm->add_option("--n", b_n, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
  bnm->add_option("--m", b_m, "largest frequency")->required()->check(CLI::NonNegativeNumber);
  bnm->add_option("--precision", b_prec, "double or dd (default: cheapest adequate)")
      ->check(CLI::IsMember({"double", "dd"}));

  auto* svg = app.add_subcommand("emit-svg", "line plot of CSV columns");
  std::string csv, xcol, svg_out, title;
  std::vector<std::string> ycols, groups;
  bool logy = false;
  svg->add_option("--csv", csv, "input CSV")->required();
  svg->add_option("--x", xcol, "x column")->required();
  svg->add_option("--y", ycols, "y column(s)")->required()->delimiter(',');
  svg->add_option("--group", groups, "columns splitting rows into series")->delimiter(',');
  svg->add_flag("--logy", logy, "logarithmic y axis");
  svg->add_option("--title", title, "chart title");
  svg->add_option("--out", svg_out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (int i = 0; i < 3; ++i)
    if (fig[i]->parsed()) return run_figure(names[i], fo[i], ff[i]);

  if (rec->parsed()) {
    gibbs_method gm;
    gibbs_status s = gibbs_parse_method(method.c_str(), &gm);
    if (s != GIBBS_OK) return report_failure(s);
    gibbs_recover_request req{};
    req.coeff_file = coeff_file.empty() ? nullptr : coeff_file.c_str();
    req.function = function.empty() ? nullptr : function.c_str();
    req.m = rec_m;
    req.method = gm;
    req.n = rec_n;
    req.T = rec_T;
    req.out_dir = rec_out.c_str();
    req.seed = rec_seed;
    gibbs_recover_result res{};
    s = gibbs_recover(&req, log_stderr, nullptr, &res);
    if (s != GIBBS_OK) return report_failure(s);
    std::printf("rank_used=%d residual_norm=%s l2_error=%s\n", res.rank_used, g17(res.residual_norm).c_str(),
                g17(res.l2_error).c_str());
    return 0;
  }

  if (bnm->parsed()) {
    gibbs_precision p;
    gibbs_status s = b_prec.empty() ? gibbs_required_precision(b_n, b_m, &p)
                                    : gibbs_parse_precision(b_prec.c_str(), &p);
    if (s != GIBBS_OK) return report_failure(s);
    gibbs_bnm_report r{};
    s = gibbs_bnm(b_n, b_m, p, &r);
    if (s != GIBBS_OK) return report_failure(s);
    std::printf("n,m,B,B_star,sigma_min,precision_mode\n%d,%d,%s,%s,%s,%s\n", r.n, r.m, g17(r.b_value).c_str(),
                g17(r.b_star).c_str(), g17(r.sigma_min).c_str(),
                r.precision == GIBBS_PRECISION_DD ? "dd" : "double");
    return 0;
  }

  if (svg->parsed()) {
    std::string y, g;
    for (const auto& c : ycols) y += (y.empty() ? "" : ",") + c;
    for (const auto& c : groups) g += (g.empty() ? "" : ",") + c;
    const gibbs_status s = gibbs_emit_svg(csv.c_str(), xcol.c_str(), y.c_str(), g.c_str(), logy ? 1 : 0,
                                          title.c_str(), svg_out.c_str(), log_stderr, nullptr);
    if (s != GIBBS_OK) return report_failure(s);
    return 0;
  }
  return 2;
}
