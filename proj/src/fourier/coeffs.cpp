// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include "fourier/coeffs.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "numerics/double_double.hpp"
#include "numerics/error.hpp"
#include "numerics/quadrature.hpp"

namespace gibbs::fourier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr int kPanelNodes = 16;
constexpr int kMaxPanels = 1 << 14;

// sin(pi y)/(pi y) with exact zeros at non-zero integers.
double sinc_pi(double y) {
  if (y == 0.0) return 1.0;
  double r = std::remainder(y, 2.0);  // sin(pi y) = sin(pi r)
  return std::sin(kPi * r) / (kPi * y);
}

// j x mod 2 in [-1, 1], keeping the rounding error of the product.
double reduced_phase(int j, double x) {
  const double p = static_cast<double>(j) * x;
  return std::remainder(p, 2.0) + std::fma(static_cast<double>(j), x, -p);
}

// Integral of |g| by 8 panels of 16 nodes.
double abs_integral(const std::function<cplx(double)>& g) {
  const numerics::QuadratureRule& base = numerics::gauss_legendre_cached(kPanelNodes);
  double s = 0.0;
  for (int p = 0; p < 8; ++p)
    for (int i = 0; i < kPanelNodes; ++i) s += std::abs(g(-1.0 + (p + 0.5 + 0.5 * base.nodes[i]) * 0.25)) * 0.125 * base.weights[i];
  return s;
}

cplx panel_integral(const std::function<cplx(double)>& g, int j, int panels) {
  const numerics::QuadratureRule& base = numerics::gauss_legendre_cached(kPanelNodes);
  const double h = 2.0 / panels;
  numerics::dd re(0.0);
  numerics::dd im(0.0);
  for (int p = 0; p < panels; ++p) {
    double mid = -1.0 + (p + 0.5) * h;
    for (int i = 0; i < kPanelNodes; ++i) {
      double x = mid + 0.5 * h * base.nodes[i];
      cplx v = g(x) * std::polar(1.0, -kPi * reduced_phase(j, x)) * (0.5 * h * base.weights[i]);
      re += v.real();
      im += v.imag();
    }
  }
  return cplx(numerics::to_double(re), numerics::to_double(im)) / kSqrt2;
}

}  // namespace

namespace {
std::size_t checked_length(int m) {
  if (m < 0) throw InputError("CoeffVec: m must be >= 0");
  return 2 * static_cast<std::size_t>(m) + 1;
}
}  // namespace

CoeffVec::CoeffVec(int m) : m_(m), values_(checked_length(m), cplx(0.0)) {}

CoeffVec::CoeffVec(int m, std::vector<cplx> values) : m_(m), values_(std::move(values)) {
  if (m < 0 || values_.size() != 2 * static_cast<std::size_t>(m) + 1)
    throw InputError("CoeffVec: length must be 2m+1");
}

TestFunction::TestFunction(Family family, double parameter)
    : family_(family), parameter_(parameter) {
  if (!std::isfinite(parameter)) throw InputError("TestFunction: parameter must be finite");
  bool zero_ok = family == Family::ExpLayer || family == Family::Cosine;
  if (parameter < 0.0 || (!zero_ok && parameter == 0.0))
    throw InputError("TestFunction: parameter must be positive");
  param_text_ = format_double(parameter);
}

TestFunction TestFunction::parse(const std::string& spec) {
  static const std::map<std::string, Family> names = {
      {"exp", Family::ExpLayer},   {"explayer", Family::ExpLayer}, {"realpole", Family::RealPole},
      {"pole", Family::RealPole},  {"runge", Family::Runge},       {"cos", Family::Cosine},
      {"cosine", Family::Cosine}};
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InputError("test function '" + spec + "': expected family:parameter");
  auto it = names.find(spec.substr(0, colon));
  if (it == names.end()) throw InputError("test function '" + spec + "': unknown family");
  std::string text = spec.substr(colon + 1);
  double factor = 1.0;
  std::string number = text;
  if (text.size() > 5 && text.compare(text.size() - 5, 5, "sqrt2") == 0) {
    factor = kSqrt2;
    number = text.substr(0, text.size() - 5);
    if (!number.empty() && number.back() == '*') number.pop_back();
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("test function '" + spec + "': bad parameter '" + text + "'");
  }
  TestFunction f(it->second, value * factor);
  f.param_text_ = text;
  return f;
}

double TestFunction::operator()(double x) const {
  const double a = parameter_;
  switch (family_) {
    case Family::ExpLayer: return std::exp(a * (x - 1.0));
    case Family::RealPole: return 1.0 / (a + 1.0 - a * x);
    case Family::Runge: return 1.0 / (1.0 + a * a * x * x);
    case Family::Cosine: return std::cos(a * kPi * x);
  }
  return 0.0;
}

std::string TestFunction::label() const {
  static const char* prefix[] = {"exp", "realpole", "runge", "cos"};
  return std::string(prefix[static_cast<int>(family_)]) + "_" + param_text_;
}

std::string TestFunction::spec() const {
  static const char* prefix[] = {"exp", "realpole", "runge", "cos"};
  return std::string(prefix[static_cast<int>(family_)]) + ":" + param_text_;
}

cplx coefficient_by_quadrature(const std::function<cplx(double)>& g, int j) {
  // Power-of-two panel counts keep the panel midpoints exact.
  int panels = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(8, std::abs(j)))));
  cplx prev = panel_integral(g, j, panels);
  // Coefficients that are tiny relative to the function itself only need
  // absolute accuracy.
  const double scale = abs_integral(g) / kSqrt2;
  while (true) {
    if (panels * 2 > kMaxPanels)
      throw NumericalError("coefficient quadrature did not converge for j=" + std::to_string(j) +
                           " within " + std::to_string(kMaxPanels) + " panels");
    panels *= 2;
    cplx cur = panel_integral(g, j, panels);
    double tol = 1e-14 * std::max(std::abs(cur), 1e-2 * scale);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
}

CoeffVec coeffs_by_quadrature(const std::function<cplx(double)>& g, int m) {
  CoeffVec c(m);
  for (int j = -m; j <= m; ++j) c[j] = coefficient_by_quadrature(g, j);
  return c;
}

CoeffVec coeffs_exact(const TestFunction& f, int m) {
  if (m < 0) throw InputError("coeffs_exact: m must be >= 0");
  CoeffVec c(m);
  const double a = f.parameter();
  switch (f.family()) {
    case Family::ExpLayer: {
      // (1/sqrt2) (-1)^j (1 - e^{-2a}) / (a - i j pi); a = 0 is the constant 1.
      double num = -std::expm1(-2.0 * a);
      for (int j = -m; j <= m; ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        if (a == 0.0)
          c[j] = (j == 0) ? cplx(kSqrt2) : cplx(0.0);
        else
          c[j] = sign * num / cplx(a, -j * kPi) / kSqrt2;
      }
      return c;
    }
    case Family::Cosine:
      for (int j = -m; j <= m; ++j) c[j] = (sinc_pi(a - j) + sinc_pi(a + j)) / kSqrt2;
      return c;
    case Family::RealPole:
    case Family::Runge: {
      auto g = [&f](double x) { return cplx(f(x)); };
      // Real function: c_{-j} = conj(c_j).
      for (int j = 0; j <= m; ++j) {
        c[j] = coefficient_by_quadrature(g, j);
        c[-j] = std::conj(c[j]);
      }
      c[0] = cplx(c[0].real(), 0.0);
      return c;
    }
  }
  return c;
}

cplx evaluate_truncated_series(const CoeffVec& c, double x) {
  if (!(std::abs(x) <= 1.0)) throw InputError("evaluate_truncated_series: |x| must be <= 1");
  numerics::dd re(0.0);
  numerics::dd im(0.0);
  for (int j = -c.m(); j <= c.m(); ++j) {
    cplx v = c[j] * std::polar(1.0, kPi * reduced_phase(j, x));
    re += v.real();
    im += v.imag();
  }
  return cplx(numerics::to_double(re), numerics::to_double(im)) / kSqrt2;
}

double norm_m(const CoeffVec& c) {
  double s = 0.0;
  for (const cplx& v : c.values()) s += std::norm(v);
  return std::sqrt(s);
}

double norm_l2(const std::function<cplx(double)>& g, int nodes) {
  if (nodes < 2) throw InputError("norm_l2: need at least 2 nodes");
  const numerics::QuadratureRule& rule = numerics::gauss_legendre_cached(nodes);
  numerics::dd s(0.0);
  for (int i = 0; i < nodes; ++i) s += rule.weights[i] * std::norm(g(rule.nodes[i]));
  return std::sqrt(numerics::to_double(s));
}

double bernstein_radius(const TestFunction& f) {
  const double a = f.parameter();
  switch (f.family()) {
    case Family::ExpLayer:
    case Family::Cosine: return std::numeric_limits<double>::infinity();
    case Family::RealPole: {
      double x0 = (a + 1.0) / a;
      return x0 + std::sqrt(x0 * x0 - 1.0);
    }
    case Family::Runge: return (1.0 + std::sqrt(1.0 + a * a)) / a;
  }
  return std::numeric_limits<double>::infinity();
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_coeffs_csv(const CoeffVec& c, std::ostream& os) {
  os << "# gibbs " << GIBBS_VERSION << " fourier coefficients m=" << c.m() << "\n";
  os << "j,re,im\n";
  for (int j = -c.m(); j <= c.m(); ++j)
    os << j << ',' << format_double(c[j].real()) << ',' << format_double(c[j].imag()) << '\n';
}

void write_coeffs_csv(const CoeffVec& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path + "'");
  write_coeffs_csv(c, os);
}

CoeffVec read_coeffs_csv(std::istream& is) {
  std::map<long, cplx> rows;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& why) {
    throw InputError("coefficient CSV line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "j,re,im") fail("expected header 'j,re,im', got '" + line + "'");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string f[3];
    for (int k = 0; k < 3; ++k)
      if (!std::getline(ss, f[k], ',')) fail("expected 3 fields");
    std::string extra;
    if (std::getline(ss, extra, ',')) fail("too many fields");
    long j = 0;
    double re = 0.0;
    double im = 0.0;
    try {
      std::size_t u0 = 0, u1 = 0, u2 = 0;
      j = std::stol(f[0], &u0);
      re = std::stod(f[1], &u1);
      im = std::stod(f[2], &u2);
      if (u0 != f[0].size() || u1 != f[1].size() || u2 != f[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail("malformed number in '" + line + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) fail("non-finite value");
    if (!rows.emplace(j, cplx(re, im)).second) fail("duplicate index j=" + std::to_string(j));
  }
  if (!header_seen) throw InputError("coefficient CSV: missing header 'j,re,im'");
  if (rows.empty()) throw InputError("coefficient CSV: no data rows");
  long m = rows.rbegin()->first;
  if (rows.begin()->first != -m || static_cast<long>(rows.size()) != 2 * m + 1)
    throw InputError("coefficient CSV: indices must cover -m..m exactly once");
  CoeffVec c(static_cast<int>(m));
  for (const auto& [j, v] : rows) c[static_cast<int>(j)] = v;
  return c;
}

CoeffVec read_coeffs_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_coeffs_csv(is);
}

}  // namespace gibbs::fourier
