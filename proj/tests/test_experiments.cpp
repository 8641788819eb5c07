// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "experiments/config.hpp"
#include "experiments/runner.hpp"
#include "fourier/coeffs.hpp"
#include "frame/bnm.hpp"
#include "numerics/error.hpp"
#include "poly/legendre.hpp"

using namespace gibbs;
using namespace gibbs::experiments;
namespace fs = std::filesystem;
using numerics::cplx;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("gibbs_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string f; std::getline(is, f, sep);) out.push_back(f);
  return out;
}

// Every file in a directory, by name.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

}  // namespace

TEST_CASE("config defaults") {
  auto f1 = ExperimentConfig::defaults(Figure::Fig1);
  REQUIRE(f1.alpha_beta.size() == 3);
  CHECK(f1.alpha_beta[0] == std::pair{0.5, 1.0});
  CHECK(f1.alpha_beta[1] == std::pair{0.25, 1.25});
  CHECK(f1.alpha_beta[2] == std::pair{0.125, 1.5});

  auto f2 = ExperimentConfig::defaults(Figure::Fig2);
  CHECK(f2.m_grid().front() == 1);
  CHECK(f2.m_grid().back() == 200);
  CHECK(f2.m_grid().size() == 200);
  CHECK(f2.kappa0 == 10.0);
  CHECK(f2.trials == 100);
  CHECK(f2.T == std::vector<double>{1.5, 2.0, 4.0});

  auto f3 = ExperimentConfig::defaults(Figure::Fig3);
  auto g = f3.m_grid();
  REQUIRE(g.size() == 20);
  for (int i = 0; i < 20; ++i) CHECK(g[i] == 10 * (i + 1));
  CHECK(f3.functions == std::vector<std::string>{"exp:1", "exp:100", "realpole:9", "realpole:49", "runge:5",
                                                 "runge:10", "cos:7sqrt2", "cos:14sqrt2"});
  CHECK(parse_figure("fig2") == Figure::Fig2);
  CHECK_THROWS_AS(parse_figure("fig4"), InputError);
}

TEST_CASE("config JSON round trip") {
  for (Figure f : {Figure::Fig1, Figure::Fig2, Figure::Fig3}) {
    auto c = ExperimentConfig::defaults(f);
    c.seed = 0xfedcba9876543210ull;
    c.out_dir = "some/dir";
    c.precision = numerics::PrecisionMode::DoubleDouble;
    c.threads = 3;
    CHECK(ExperimentConfig::from_json(c.to_json()) == c);
  }
  auto d = scratch_dir("config");
  auto c = ExperimentConfig::defaults(Figure::Fig3);
  c.functions = {"runge:5"};
  std::ofstream(d / "c.json") << c.to_json();
  CHECK(ExperimentConfig::load((d / "c.json").string()) == c);
  CHECK_THROWS_AS(ExperimentConfig::load((d / "missing.json").string()), IoError);
}

TEST_CASE("config validation") {
  auto base = nlohmann::json::parse(ExperimentConfig::defaults(Figure::Fig2).to_json());
  auto bad = [&](const char* key, nlohmann::json v) {
    auto j = base;
    j[key] = v;
    return j.dump();
  };
  CHECK_THROWS_AS(ExperimentConfig::from_json("{not json"), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("unknown_key", 1)), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("kappa0", 1.0)), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("trials", 0)), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("stride", 0)), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("T", {2.0, 1.0})), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("precision", "quad")), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("functions", {"sinh:3"})), InputError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad("m_max", "ten")), InputError);
  // partial configs fill in the figure defaults
  auto partial = ExperimentConfig::from_json(R"({"figure": "fig3", "m_max": 30})");
  CHECK(partial.m_grid() == std::vector<int>{10, 20, 30});
  CHECK(partial.functions.size() == 8);
}

TEST_CASE("fig1 rows and metadata") {
  auto d = scratch_dir("fig1");
  auto c = ExperimentConfig::defaults(Figure::Fig1);
  c.alpha_beta = {{0.5, 1.0}};
  c.n_min = 4;
  c.n_max = 8;
  c.out_dir = d.string();
  auto s = run_fig1(c);
  CHECK(s.rows == 5);
  REQUIRE(s.files.size() == 2);
  auto lines = lines_of(slurp(d / "fig1_alpha0.5_beta1.csv"));
  REQUIRE(lines.size() == 7);
  CHECK(lines[0].rfind("# gibbs ", 0) == 0);
  CHECK(lines[0].find("seed=20120101") != std::string::npos);
  CHECK(lines[0].find("precision_mode=double") != std::string::npos);
  CHECK(lines[1] == "n,m,B,B_star,scaled_log_B,scaled_log_B_star,B_ge_B_star");
  auto row = split(lines[2]);
  CHECK(row[0] == "4");
  CHECK(row[1] == "2");
  const double bs = std::sqrt(1.0 + 4.0 / 16.0 + (4.0 / 32.0) * std::pow(2.25, 8));
  CHECK(std::stod(row[3]) == doctest::Approx(bs).epsilon(1e-15));
  CHECK(std::stod(row[3]) == frame::b_star(4, 2));
  CHECK(std::stod(row[2]) == frame::bnm(4, 2).b_value);
  CHECK(std::stod(row[4]) == doctest::Approx(std::log(std::stod(row[2])) / 4.0).epsilon(1e-15));
  // B < B* rows are reported, not hidden
  CHECK(s.violations == static_cast<int>(std::count_if(lines.begin() + 2, lines.end(),
                                                       [](const std::string& l) { return l.back() == '0'; })));
  CHECK(s.violations > 0);
  CHECK(!s.warnings.empty());

  const std::string first = slurp(d / "fig1_alpha0.5_beta1.csv");
  run_fig1(c);
  CHECK(slurp(d / "fig1_alpha0.5_beta1.csv") == first);
  c.threads = 4;
  run_fig1(c);
  CHECK(slurp(d / "fig1_alpha0.5_beta1.csv") == first);
}

TEST_CASE("fig1 respects the precision cap") {
  auto d = scratch_dir("fig1cap");
  auto c = ExperimentConfig::defaults(Figure::Fig1);
  c.out_dir = d.string();
  auto s = run_fig1(c);
  for (const auto& file : s.files) {
    if (file.find("summary") != std::string::npos) continue;
    auto lines = lines_of(slurp(file));
    for (std::size_t i = 2; i < lines.size(); ++i) CHECK(std::stod(split(lines[i])[3]) <= frame::kDoubleBStarCap);
  }
  auto sum = lines_of(slurp(d / "fig1_summary.csv"));
  REQUIRE(sum.size() == 5);
  CHECK(sum[1] == "alpha,beta,rows,violations,fitted_c");
}

TEST_CASE("fig2 small grid") {
  auto d1 = scratch_dir("fig2a");
  auto d2 = scratch_dir("fig2b");
  auto c = ExperimentConfig::defaults(Figure::Fig2);
  c.m_min = 4;
  c.m_max = 40;
  c.stride = 9;
  c.trials = 10;
  c.out_dir = d1.string();
  auto s = run_fig2(c);
  CHECK(s.rows == 5 * 4);
  c.out_dir = d2.string();
  c.threads = 3;
  run_fig2(c);
  auto a = snapshot(d1), b = snapshot(d2);
  CHECK(a == b);
  auto lines = lines_of(a["fig2.csv"]);
  CHECK(lines[1] == "method,T,m,n,n_over_sqrt_m,n_over_m,kappa");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto r = split(lines[i]);
    CHECK(std::stod(r[6]) <= 10.0);
    const int m = std::stoi(r[2]), n = std::stoi(r[3]);
    CHECK(std::stod(r[4]) == doctest::Approx(n / std::sqrt(double(m))));
    if (r[0] == "PLS") CHECK(r[1].empty());
  }
}

TEST_CASE("fig3 small grid") {
  auto d1 = scratch_dir("fig3a");
  auto d2 = scratch_dir("fig3b");
  auto c = ExperimentConfig::defaults(Figure::Fig3);
  c.m_max = 30;
  c.trials = 10;
  c.functions = {"runge:5", "exp:1"};
  c.out_dir = d1.string();
  auto s = run_fig3(c);
  CHECK(s.files.size() == 2);
  c.out_dir = d2.string();
  c.threads = 3;
  run_fig3(c);
  auto a = snapshot(d1), b = snapshot(d2);
  CHECK(a == b);
  auto lines = lines_of(a["fig3_runge_5.csv"]);
  REQUIRE(lines.size() == 2 + 3 * 4);
  CHECK(lines[0].find("function=runge:5") != std::string::npos);
  CHECK(lines[1] == "m,method,T,n,l2_error");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto r = split(lines[i]);
    CHECK(std::stod(r[4]) >= 0.0);
    CHECK(std::stod(r[4]) < 1.0);
  }
}

TEST_CASE("recover") {
  auto d = scratch_dir("recover");
  // f in P_{2n} from a coefficient file
  poly::LegendrePoly p{{cplx(0.3), cplx(-1.1), cplx(0.0, 0.4), cplx(0.2), cplx(0.05)}};
  fourier::CoeffVec c(6);
  {
    auto a = poly::legendre_fourier_matrix(4, 6);
    for (int j = -6; j <= 6; ++j)
      for (int k = 0; k <= 4; ++k) c[j] += a(j + 6, k) * p.coeffs[k];
  }
  fourier::write_coeffs_csv(c, (d / "p.csv").string());
  RecoverRequest req;
  req.coeff_file = (d / "p.csv").string();
  req.method = "PLS";
  req.n = 2;
  req.out_dir = d.string();
  auto r = recover(req);
  CHECK(std::isnan(r.l2_error));
  CHECK(r.info.residual_norm < 1e-13);
  auto samples = lines_of(slurp(r.samples_path));
  REQUIRE(samples.size() == 2 + kRecoverSamples);
  CHECK(samples[1] == "x,re,im");
  double worst = 0.0;
  for (std::size_t i = 2; i < samples.size(); ++i) {
    auto f = split(samples[i]);
    worst = std::max(worst, std::abs(cplx(std::stod(f[1]), std::stod(f[2])) - p(std::stod(f[0]))));
  }
  CHECK(worst < 1e-12);
  auto js = nlohmann::json::parse(slurp(r.json_path));
  CHECK(js["basis"] == "legendre_orthonormal");
  CHECK(js["parameters"]["method"] == "PLS");
  CHECK(js["coefficients"].size() == 5);
  CHECK(js["l2_error"].is_null());

  // known function: PLS on a polynomial, FE on a constant
  req = RecoverRequest{};
  req.function = "exp:0";
  req.m = 8;
  req.method = "PLS";
  req.n = 3;
  req.out_dir = d.string();
  CHECK(recover(req).l2_error <= 1e-10);
  req.method = "FE";
  req.n = 6;
  auto fe = recover(req);
  CHECK(fe.l2_error <= 1e-12);
  js = nlohmann::json::parse(slurp(fe.json_path));
  CHECK(js["basis"] == "fourier_extension");
  CHECK(js["parameters"]["T"] == 2.0);
  CHECK(js["coefficients"].size() == 13);
  CHECK(lines_of(slurp(fe.samples_path))[1] == "x,re,im,f");
}

TEST_CASE("recover with IPRM is idempotent") {
  auto d = scratch_dir("iprm");
  const int m = 6;
  fourier::write_coeffs_csv(fourier::coeffs_exact(fourier::TestFunction::parse("runge:5"), m),
                            (d / "c.csv").string());
  RecoverRequest req;
  req.coeff_file = (d / "c.csv").string();
  req.method = "IPRM";
  req.out_dir = d.string();
  auto first = nlohmann::json::parse(slurp(recover(req).json_path));
  poly::LegendrePoly p;
  for (const auto& e : first["coefficients"]) p.coeffs.emplace_back(e["re"].get<double>(), e["im"].get<double>());
  REQUIRE(p.degree() == 2 * m);
  fourier::CoeffVec c(m);
  auto a = poly::legendre_fourier_matrix(2 * m, m);
  for (int j = -m; j <= m; ++j)
    for (int k = 0; k <= 2 * m; ++k) c[j] += a(j + m, k) * p.coeffs[k];
  fourier::write_coeffs_csv(c, (d / "c2.csv").string());
  req.coeff_file = (d / "c2.csv").string();
  auto second = nlohmann::json::parse(slurp(recover(req).json_path));
  for (int k = 0; k <= 2 * m; ++k) {
    CHECK(second["coefficients"][k]["re"].get<double>() ==
          doctest::Approx(first["coefficients"][k]["re"].get<double>()).epsilon(1e-9).scale(1.0));
    CHECK(second["coefficients"][k]["im"].get<double>() ==
          doctest::Approx(first["coefficients"][k]["im"].get<double>()).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("recover input errors") {
  auto d = scratch_dir("recover_err");
  std::ofstream(d / "bad.csv") << "j,re,im\n0,1,0\n1,abc,0\n-1,0,0\n";
  RecoverRequest req;
  req.coeff_file = (d / "bad.csv").string();
  req.out_dir = d.string();
  try {
    recover(req);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  req.coeff_file = (d / "missing.csv").string();
  CHECK_THROWS_AS(recover(req), IoError);
  RecoverRequest none;
  none.out_dir = d.string();
  CHECK_THROWS_AS(recover(none), InputError);
  RecoverRequest toomuch;
  toomuch.function = "runge:5";
  toomuch.m = 4;
  toomuch.n = 5;
  toomuch.out_dir = d.string();
  CHECK_THROWS_AS(recover(toomuch), InputError);
}

TEST_CASE("emit_svg") {
  auto d = scratch_dir("svg");
  std::ofstream(d / "two.csv") << "# meta\nx,y\n1,2\n2,4\n3,8\n";
  SvgRequest req;
  req.csv_path = (d / "two.csv").string();
  req.x = "x";
  req.y = {"y"};
  req.title = "two";
  req.out_path = (d / "two.svg").string();
  CHECK(emit_svg(req).empty());
  const std::string svg = slurp(d / "two.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++polylines;
  CHECK(polylines == 1);
  emit_svg(req);
  CHECK(slurp(d / "two.svg") == svg);

  std::ofstream(d / "zero.csv") << "x,y\n1,0\n2,1e-3\n3,1\n";
  req.csv_path = (d / "zero.csv").string();
  req.log_y = true;
  req.out_path = (d / "zero.svg").string();
  auto warnings = emit_svg(req);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("clamped") != std::string::npos);
  CHECK(slurp(d / "zero.svg").find("class=\"warning\"") != std::string::npos);

  std::ofstream(d / "empty.csv") << "";
  req.csv_path = (d / "empty.csv").string();
  req.log_y = false;
  req.out_path = (d / "empty.svg").string();
  CHECK(emit_svg(req).size() == 1);
  CHECK(fs::exists(d / "empty.svg"));

  req.csv_path = (d / "two.csv").string();
  req.y = {"z"};
  try {
    emit_svg(req);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
}
