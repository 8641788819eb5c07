// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "experiments/runner.hpp"
#include "numerics/error.hpp"

namespace gibbs::experiments {

namespace {

constexpr double kWidth = 720, kHeight = 450;
constexpr double kLeft = 80, kRight = 190, kTop = 40, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> pts;
};

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  std::vector<double> ticks;  // in axis units (log10 for log axes)
};

Axis linear_axis(double lo, double hi) {
  Axis a;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double step = nice_step(hi - lo, 5);
  a.lo = std::floor(lo / step) * step;
  a.hi = std::ceil(hi / step) * step;
  for (double t = a.lo; t <= a.hi + 0.5 * step; t += step) a.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return a;
}

Axis log_axis(double lo, double hi) {
  Axis a;
  a.lo = std::floor(std::log10(lo));
  a.hi = std::ceil(std::log10(hi));
  if (a.hi <= a.lo) a.hi = a.lo + 1;
  const int span = static_cast<int>(a.hi - a.lo);
  const int every = std::max(1, (span + 9) / 10);
  for (int d = 0; d <= span; d += every) a.ticks.push_back(a.lo + d);
  return a;
}

}  // namespace

std::vector<std::string> emit_svg(const SvgRequest& req) {
  if (req.x.empty() || req.y.empty()) throw InputError("emit-svg: x and at least one y column are required");
  std::ifstream is(req.csv_path);
  if (!is) throw IoError("cannot open '" + req.csv_path + "'");
  std::vector<std::string> warnings;

  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line);
    if (header.empty()) {
      header = fields;
      continue;
    }
    if (fields.size() != header.size())
      throw InputError(req.csv_path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }

  std::vector<Series> series;
  if (header.empty()) {
    warnings.push_back("emit-svg: '" + req.csv_path + "' is empty; writing empty axes");
  } else {
    auto index_of = [&](const std::string& name) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw InputError("emit-svg: column '" + name + "' not found in " + req.csv_path);
      return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t xi = index_of(req.x);
    std::vector<std::size_t> yi, gi;
    for (const auto& y : req.y) yi.push_back(index_of(y));
    for (const auto& g : req.group) gi.push_back(index_of(g));
    if (rows.empty()) warnings.push_back("emit-svg: '" + req.csv_path + "' has no data rows; writing empty axes");

    std::map<std::string, std::size_t> by_name;
    int skipped = 0;
    for (const auto& r : rows) {
      std::string key;
      for (std::size_t g : gi)
        if (!r[g].empty()) key += (key.empty() ? "" : " ") + r[g];
      char* end = nullptr;
      const double x = std::strtod(r[xi].c_str(), &end);
      const bool x_ok = end != r[xi].c_str() && std::isfinite(x);
      for (std::size_t k = 0; k < yi.size(); ++k) {
        std::string name = key;
        if (key.empty() || yi.size() > 1) name = req.y[k] + (key.empty() ? "" : " " + key);
        auto [it, inserted] = by_name.emplace(name, series.size());
        if (inserted) series.push_back({name, {}});
        const double y = std::strtod(r[yi[k]].c_str(), &end);
        if (!x_ok || end == r[yi[k]].c_str() || std::isnan(y) || std::isinf(y)) {
          ++skipped;
          continue;
        }
        series[it->second].pts.emplace_back(x, y);
      }
    }
    if (skipped > 0) warnings.push_back("emit-svg: skipped " + std::to_string(skipped) + " non-finite points");
  }

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY, ypos = INFINITY;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
      if (y > 0.0) ypos = std::min(ypos, y);
    }
  const bool empty = !(xmin <= xmax);
  Axis ax = empty ? linear_axis(0.0, 1.0) : linear_axis(xmin, xmax);
  Axis ay;
  int clamped = 0;
  if (req.log_y) {
    if (!std::isfinite(ypos)) {
      ay = log_axis(1.0, 10.0);
    } else {
      ay = log_axis(ypos, std::max(ymax, ypos));
    }
    for (const auto& s : series)
      for (const auto& p : s.pts)
        if (!(p.second > 0.0)) ++clamped;
    if (clamped > 0)
      warnings.push_back("emit-svg: clamped " + std::to_string(clamped) +
                         " non-positive values to the log axis floor 1e" + num(ay.lo));
  } else {
    ay = empty ? linear_axis(0.0, 1.0) : linear_axis(ymin, ymax);
  }

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) {
    const double v = req.log_y ? (y > 0.0 ? std::log10(y) : ay.lo) : y;
    return kTop + (ay.hi - v) / (ay.hi - ay.lo) * ph;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!req.title.empty())
    os << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(req.title) << "</text>\n";
  os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(pw) << "\" height=\""
     << coord(ph) << "\"/>\n</g>\n<g class=\"ticks\">\n";
  for (double t : ax.ticks) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    os << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(x) << "\" y2=\""
       << coord(kTop + ph + 5) << "\" stroke=\"black\"/><text x=\"" << coord(x) << "\" y=\""
       << coord(kTop + ph + 18) << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ay.ticks) {
    const double y = kTop + (ay.hi - t) / (ay.hi - ay.lo) * ph;
    os << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(kLeft)
       << "\" y2=\"" << coord(y) << "\" stroke=\"black\"/><text x=\"" << coord(kLeft - 8) << "\" y=\""
       << coord(y + 4) << "\" text-anchor=\"end\">" << (req.log_y ? "1e" + num(t) : num(t)) << "</text>\n";
  }
  os << "</g>\n<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10)
     << "\" text-anchor=\"middle\">" << escape(req.x) << "</text>\n";
  os << "<g class=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    if (series[s].pts.empty()) continue;
    os << "<polyline stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < series[s].pts.size(); ++i) {
      const auto& [x, y] = series[s].pts[i];
      os << (i ? " " : "") << coord(px(x)) << ',' << coord(py(y));
    }
    os << "\"/>\n";
  }
  os << "</g>\n<g class=\"legend\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 10 + 18.0 * s;
    os << "<line x1=\"" << coord(kWidth - kRight + 12) << "\" y1=\"" << coord(y) << "\" x2=\""
       << coord(kWidth - kRight + 32) << "\" y2=\"" << coord(y) << "\" stroke=\""
       << kPalette[s % std::size(kPalette)] << "\" stroke-width=\"2\"/><text x=\"" << coord(kWidth - kRight + 36)
       << "\" y=\"" << coord(y + 4) << "\">" << escape(series[s].name) << "</text>\n";
  }
  os << "</g>\n";
  if (!warnings.empty()) {
    os << "<g class=\"warning\" fill=\"#b00\" font-size=\"10\">\n";
    for (std::size_t w = 0; w < warnings.size(); ++w)
      os << "<text x=\"" << coord(kLeft + 4) << "\" y=\"" << coord(kTop + 14 + 12.0 * w) << "\">"
         << escape("warning: " + warnings[w]) << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";

  std::ofstream out(req.out_path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + req.out_path + "'");
  out << os.str();
  if (!out) throw IoError("write failed for '" + req.out_path + "'");
  return warnings;
}

}  // namespace gibbs::experiments
