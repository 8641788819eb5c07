// Copyright 2026 The gibbs authors
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "experiments/runner.hpp"
#include "fourier/coeffs.hpp"
#include "json.hpp"
#include "numerics/error.hpp"
#include "recon/maps.hpp"

namespace gibbs::experiments {

using fourier::format_double;
using json = nlohmann::ordered_json;
using numerics::cplx;

RecoverResult recover(const RecoverRequest& req) {
  if (req.coeff_file.empty() == req.function.empty())
    throw InputError("recover: give exactly one of a coefficient file or a function spec");
  std::optional<fourier::TestFunction> f;
  fourier::CoeffVec c;
  if (!req.function.empty()) {
    if (req.m < 0) throw InputError("recover: m is required with a function spec");
    f = fourier::TestFunction::parse(req.function);
    c = fourier::coeffs_exact(*f, req.m);
  } else {
    c = fourier::read_coeffs_csv(req.coeff_file);
    if (req.m >= 0 && req.m != c.m())
      throw InputError("recover: file holds m = " + std::to_string(c.m()) + ", requested m = " +
                       std::to_string(req.m));
  }
  const int m = c.m();
  const recon::Method method = recon::parse_method(req.method);

  RecoverResult res;
  json params;
  params["method"] = recon::to_string(method);
  params["m"] = m;
  params["source"] = f ? f->spec() : req.coeff_file;
  json coeffs = json::array();
  std::function<cplx(double)> approx;
  std::string basis;
  if (method == recon::Method::FE) {
    if (req.n < 0) throw InputError("recover: n must be >= 0");
    if (!(req.T > 1.0)) throw InputError("recover: T must be > 1");
    recon::FeSolver solver(req.n, m, req.T);
    auto phi = solver.solve(c, &res.info);
    basis = "fourier_extension";
    params["n"] = req.n;
    params["T"] = req.T;
    for (int k = -phi.n; k <= phi.n; ++k)
      coeffs.push_back({{"k", k}, {"re", phi.a[k + phi.n].real()}, {"im", phi.a[k + phi.n].imag()}});
    approx = [phi](double x) { return phi(x); };
  } else {
    poly::LegendrePoly p;
    if (method == recon::Method::IPRM) {
      p = recon::iprm(c, &res.info);
      params["n"] = m;
    } else {
      if (req.n < 0 || req.n > m) throw InputError("recover: PLS needs 0 <= n <= m");
      p = recon::poly_ls(c, req.n, &res.info);
      params["n"] = req.n;
    }
    basis = "legendre_orthonormal";
    params["degree"] = p.degree();
    for (int k = 0; k <= p.degree(); ++k)
      coeffs.push_back({{"k", k}, {"re", p.coeffs[k].real()}, {"im", p.coeffs[k].imag()}});
    approx = [p](double x) { return p(x); };
  }
  params["rank_used"] = res.info.rank_used;
  params["svd_cutoff"] = res.info.svd_cutoff;
  params["residual_norm"] = res.info.residual_norm;

  json doc;
  doc["basis"] = basis;
  doc["parameters"] = params;
  doc["coefficients"] = coeffs;
  if (f) {
    const auto& fn = *f;
    res.l2_error = recon::l2_error(fn, approx);
    doc["l2_error"] = res.l2_error;
  } else {
    doc["l2_error"] = nullptr;
  }

  std::error_code ec;
  std::filesystem::create_directories(req.out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + req.out_dir + "': " + ec.message());
  res.json_path = (std::filesystem::path(req.out_dir) / "recover.json").string();
  res.samples_path = (std::filesystem::path(req.out_dir) / "recover_samples.csv").string();
  {
    std::ofstream os(res.json_path, std::ios::binary);
    if (!os) throw IoError("cannot write '" + res.json_path + "'");
    os << doc.dump(2) << '\n';
  }
  std::ofstream os(res.samples_path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + res.samples_path + "'");
  os << "# gibbs " << GIBBS_VERSION << " seed=" << req.seed << " precision_mode=double method="
     << recon::to_string(method) << "\n";
  os << (f ? "x,re,im,f\n" : "x,re,im\n");
  for (int i = 0; i < kRecoverSamples; ++i) {
    const double x = -1.0 + 2.0 * i / (kRecoverSamples - 1);
    const cplx v = approx(x);
    os << format_double(x) << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    if (f) os << ',' << format_double((*f)(x));
    os << '\n';
  }
  if (!os) throw IoError("write failed for '" + res.samples_path + "'");
  return res;
}

}  // namespace gibbs::experiments
