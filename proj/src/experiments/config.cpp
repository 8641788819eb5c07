// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "experiments/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fourier/coeffs.hpp"
#include "json.hpp"
#include "numerics/error.hpp"

namespace gibbs::experiments {

using nlohmann::json;

std::string to_string(Figure f) {
  switch (f) {
    case Figure::Fig1: return "fig1";
    case Figure::Fig2: return "fig2";
    case Figure::Fig3: return "fig3";
  }
  return "?";
}

Figure parse_figure(const std::string& s) {
  if (s == "fig1") return Figure::Fig1;
  if (s == "fig2") return Figure::Fig2;
  if (s == "fig3") return Figure::Fig3;
  throw InputError("unknown figure '" + s + "' (expected fig1, fig2 or fig3)");
}

ExperimentConfig ExperimentConfig::defaults(Figure figure) {
  ExperimentConfig c;
  c.figure = figure;
  c.alpha_beta = {{0.5, 1.0}, {0.25, 1.25}, {0.125, 1.5}};
  c.T = {1.5, 2.0, 4.0};
  c.functions = {"exp:1",      "exp:100",   "realpole:9",   "realpole:49",
                 "runge:5",    "runge:10",  "cos:7sqrt2",   "cos:14sqrt2"};
  if (figure == Figure::Fig3) {
    c.m_min = 10;
    c.stride = 10;
  }
  return c;
}

std::vector<int> ExperimentConfig::m_grid() const {
  std::vector<int> g;
  for (int m = m_min; m <= m_max; m += stride) g.push_back(m);
  return g;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["figure"] = experiments::to_string(figure);
  json ab = json::array();
  for (const auto& [a, b] : alpha_beta) ab.push_back({a, b});
  j["alpha_beta"] = ab;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["m_min"] = m_min;
  j["m_max"] = m_max;
  j["stride"] = stride;
  j["T"] = T;
  j["functions"] = functions;
  j["kappa0"] = kappa0;
  j["trials"] = trials;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["precision_mode"] = numerics::to_string(precision);
  j["threads"] = threads;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: top level must be an object");
  ExperimentConfig c = defaults(parse_figure(j.value("figure", std::string("fig2"))));
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "figure") continue;
      if (key == "alpha_beta") {
        c.alpha_beta.clear();
        for (const auto& p : val) {
          if (!p.is_array() || p.size() != 2) throw InputError("config: alpha_beta entries must be [alpha, beta]");
          c.alpha_beta.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
      } else if (key == "n_min") c.n_min = val.get<int>();
      else if (key == "n_max") c.n_max = val.get<int>();
      else if (key == "m_min") c.m_min = val.get<int>();
      else if (key == "m_max") c.m_max = val.get<int>();
      else if (key == "stride") c.stride = val.get<int>();
      else if (key == "T") c.T = val.get<std::vector<double>>();
      else if (key == "functions") c.functions = val.get<std::vector<std::string>>();
      else if (key == "kappa0") c.kappa0 = val.get<double>();
      else if (key == "trials") c.trials = val.get<int>();
      else if (key == "seed") c.seed = val.get<std::uint64_t>();
      else if (key == "out_dir") c.out_dir = val.get<std::string>();
      else if (key == "precision_mode") c.precision = numerics::parse_precision(val.get<std::string>());
      else if (key == "threads") c.threads = val.get<int>();
      else throw InputError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (c.stride < 1) throw InputError("config: stride must be >= 1");
  if (c.threads < 1) throw InputError("config: threads must be >= 1");
  if (c.trials < 1) throw InputError("config: trials must be >= 1");
  if (!(c.kappa0 > 1.0)) throw InputError("config: kappa0 must be > 1");
  if (c.n_min < 0 || c.n_max < c.n_min) throw InputError("config: need 0 <= n_min <= n_max");
  if (c.m_min < 1 || c.m_max < c.m_min) throw InputError("config: need 1 <= m_min <= m_max");
  for (const auto& [a, b] : c.alpha_beta)
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("config: alpha and beta must be positive");
  for (double t : c.T)
    if (!(t > 1.0) || !std::isfinite(t)) throw InputError("config: every T must be > 1");
  // parse errors name the offending spec
  for (const std::string& f : c.functions) fourier::TestFunction::parse(f);
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return from_json(ss.str());
}

}  // namespace gibbs::experiments
