/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/wgauss.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "wgauss/report.hpp"
#include "wgauss/spectral.hpp"
#include "wgauss/stability.hpp"

struct wg_weight {
  wgauss::Weight w;
};
struct wg_field {
  wgauss::ScalarField f;
};
struct wg_measure {
  wgauss::Measure m;
};

namespace {

thread_local std::string last_error;

wg_status fail(wg_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
wg_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return WG_OK;
  } catch (const wgauss::Error& e) {
    return fail(static_cast<wg_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(WG_ERR_CONFIG, std::string("config: ") + e.what());
  } catch (const std::exception& e) {
    return fail(WG_ERR_INTERNAL, std::string("internal: ") + e.what());
  } catch (...) {
    return fail(WG_ERR_INTERNAL, "internal: unknown exception");
  }
}

#define WG_REQUIRE(p)                                                          \
  do {                                                                         \
    if (!(p)) return fail(WG_ERR_NULL_ARGUMENT, "null argument: " #p);         \
  } while (0)

wgauss::Vec point(const double* x, int n) {
  return Eigen::Map<const Eigen::VectorXd>(x, n);
}

nlohmann::json parse_json(const char* text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    wgauss::raise(wgauss::ErrorCode::config, std::string("not valid JSON: ") + e.what());
  }
}

void fill(const wgauss::InequalityCheck& c, wg_check_result* out) {
  *out = wg_check_result{c.lhs, c.rhs, c.constant, c.deficit, c.tolerance, c.pass ? 1 : 0, c.informational ? 1 : 0};
}

wgauss::RuleTarget target_of(int order, uint64_t seed) {
  wgauss::RuleTarget t;
  if (order > 0) t.order = order;
  t.seed = seed;
  return t;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* wg_version(void) { return WGAUSS_VERSION; }
const char* wg_last_error(void) { return last_error.c_str(); }
void wg_string_free(char* s) { std::free(s); }

const char* wg_status_name(wg_status status) {
  switch (status) {
    case WG_OK: return "ok";
    case WG_ERR_NULL_ARGUMENT: return "null-argument";
    case WG_ERR_INTERNAL: return "internal";
    default:
      if (status >= WG_ERR_DOMAIN && status <= WG_ERR_IO) return wgauss::to_string(static_cast<wgauss::ErrorCode>(status));
      return "unknown";
  }
}

wg_status wg_weight_from_json(const char* weight_json, const char* cone_json, int dim, wg_weight** out) {
  WG_REQUIRE(weight_json);
  WG_REQUIRE(out);
  return guarded([&] {
    nlohmann::json cone = cone_json ? parse_json(cone_json) : nlohmann::json();
    std::optional<int> d;
    if (dim > 0) d = dim;
    *out = new wg_weight{wgauss::parse_weight(parse_json(weight_json), cone, d)};
  });
}

wg_status wg_weight_custom(int dim, const char* cone_json, wg_log_weight_fn log_weight, wg_grad_log_fn grad_log,
                           wg_hess_log_fn hess_log, void* user, const double* degree, const double* sampler_scale,
                           wg_weight** out) {
  WG_REQUIRE(log_weight);
  WG_REQUIRE(grad_log);
  WG_REQUIRE(hess_log);
  WG_REQUIRE(out);
  if (dim < 1 || dim > wgauss::kMaxDim) return fail(WG_ERR_PARAMETER, "dimension out of range");
  return guarded([&] {
    wgauss::Custom c;
    c.log_weight = [=](const wgauss::Vec& x) { return log_weight(x.data(), dim, user); };
    c.grad_log = [=](const wgauss::Vec& x) {
      wgauss::Vec g(dim);
      grad_log(x.data(), dim, g.data(), user);
      return g;
    };
    c.hess_log = [=](const wgauss::Vec& x) {
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> h(dim, dim);
      hess_log(x.data(), dim, h.data(), user);
      return wgauss::Mat(h);
    };
    if (degree) c.degree = *degree;
    if (sampler_scale) c.sampler_scale = *sampler_scale;
    nlohmann::json cj = cone_json ? parse_json(cone_json) : nlohmann::json();
    // reuse the config parser for the cone by pairing it with a neutral weight
    wgauss::Weight probe = wgauss::parse_weight({{"kind", "gaussian_tilt"}, {"s", 0.0}}, cj, dim);
    *out = new wg_weight{wgauss::Weight(wgauss::WeightSpec{c}, probe.cone())};
  });
}

void wg_weight_free(wg_weight* w) { delete w; }

wg_status wg_weight_dim(const wg_weight* w, int* dim) {
  WG_REQUIRE(w);
  WG_REQUIRE(dim);
  *dim = w->w.dim();
  return WG_OK;
}

wg_status wg_weight_value(const wg_weight* w, const double* x, double* value) {
  WG_REQUIRE(w);
  WG_REQUIRE(x);
  WG_REQUIRE(value);
  return guarded([&] { *value = w->w.value(point(x, w->w.dim())); });
}

wg_status wg_weight_grad_log(const wg_weight* w, const double* x, double* grad) {
  WG_REQUIRE(w);
  WG_REQUIRE(x);
  WG_REQUIRE(grad);
  return guarded([&] {
    wgauss::Vec g = w->w.grad_log(point(x, w->w.dim()));
    std::copy(g.data(), g.data() + g.size(), grad);
  });
}

wg_status wg_weight_curvature(const wg_weight* w, double* curvature) {
  WG_REQUIRE(w);
  WG_REQUIRE(curvature);
  return guarded([&] { *curvature = w->w.curvature(); });
}

wg_status wg_weight_degree(const wg_weight* w, int* homogeneous, double* degree) {
  WG_REQUIRE(w);
  WG_REQUIRE(homogeneous);
  *homogeneous = w->w.homogeneous() ? 1 : 0;
  if (w->w.homogeneous() && degree) *degree = *w->w.degree();
  return WG_OK;
}

wg_status wg_field_from_json(const char* field_json, const wg_weight* w, wg_field** out) {
  WG_REQUIRE(field_json);
  WG_REQUIRE(w);
  WG_REQUIRE(out);
  return guarded([&] { *out = new wg_field{wgauss::parse_field(parse_json(field_json), w->w.dim(), w->w)}; });
}

void wg_field_free(wg_field* f) { delete f; }

wg_status wg_field_value(const wg_field* f, const double* x, double* value) {
  WG_REQUIRE(f);
  WG_REQUIRE(x);
  WG_REQUIRE(value);
  return guarded([&] { *value = f->f.value(point(x, f->f.dim())); });
}

wg_status wg_measure_gaussian(const wg_weight* w, double lambda, int order, uint64_t seed, wg_measure** out) {
  WG_REQUIRE(w);
  WG_REQUIRE(out);
  return guarded([&] { *out = new wg_measure{wgauss::Measure::gaussian(w->w, lambda, target_of(order, seed))}; });
}

wg_status wg_measure_lebesgue(const wg_weight* w, int order, uint64_t seed, wg_measure** out) {
  WG_REQUIRE(w);
  WG_REQUIRE(out);
  return guarded([&] { *out = new wg_measure{wgauss::Measure::lebesgue(w->w, target_of(order, seed))}; });
}

void wg_measure_free(wg_measure* m) { delete m; }

wg_status wg_integrate(const wg_measure* m, const wg_field* f, double* value, double* std_error) {
  WG_REQUIRE(m);
  WG_REQUIRE(f);
  WG_REQUIRE(value);
  return guarded([&] {
    wgauss::Integral r = m->m.integrate(f->f);
    *value = r.value;
    if (std_error) *std_error = r.std_error;
  });
}

wg_status wg_check_poincare(const wg_measure* mu, const wg_field* f, double q, int level, wg_check_result* out) {
  WG_REQUIRE(mu);
  WG_REQUIRE(f);
  WG_REQUIRE(out);
  if (level < WG_POINCARE_BASIC || level > WG_POINCARE_L2_STABILITY) return fail(WG_ERR_PARAMETER, "unknown level");
  return guarded(
      [&] { fill(wgauss::check_poincare(mu->m, f->f, q, static_cast<wgauss::PoincareLevel>(level)), out); });
}

wg_status wg_check_beckner(const wg_measure* mu, const wg_field* f, double p, double q, wg_check_result* out) {
  WG_REQUIRE(mu);
  WG_REQUIRE(f);
  WG_REQUIRE(out);
  return guarded([&] { fill(wgauss::check_beckner(mu->m, f->f, p, q), out); });
}

wg_status wg_check_lsi(const wg_measure* mu, const wg_field* f, double q, wg_check_result* out) {
  WG_REQUIRE(mu);
  WG_REQUIRE(f);
  WG_REQUIRE(out);
  return guarded([&] { fill(wgauss::check_lsi(mu->m, f->f, q), out); });
}

wg_status wg_spectral_gap(const wg_measure* mu, int degree, double* gap, double* convergence_delta) {
  WG_REQUIRE(mu);
  WG_REQUIRE(gap);
  return guarded([&] {
    int d = degree > 0 ? degree : wgauss::default_galerkin_degree(mu->m.dim());
    wgauss::SpectralResult r = wgauss::spectral_gap(wgauss::build_galerkin(mu->m, d));
    *gap = r.gap;
    if (convergence_delta) *convergence_delta = r.convergence_delta;
  });
}

wg_status wg_hup_deficit(const wg_measure* nu, const wg_field* f, double* delta, double* lambda_star) {
  WG_REQUIRE(nu);
  WG_REQUIRE(f);
  WG_REQUIRE(delta);
  return guarded([&] {
    wgauss::HupDeficit h = wgauss::hup_deficit(nu->m, f->f);
    *delta = h.delta;
    if (lambda_star) *lambda_star = h.lambda_star;
  });
}

wg_status wg_hup_stability(const wg_weight* w, const wg_field* f, double* delta, double* distance_sq,
                           double* improved_distance_sq, int* pass) {
  WG_REQUIRE(w);
  WG_REQUIRE(f);
  return guarded([&] {
    wgauss::StabilityReport r = wgauss::check_hup_stability(w->w, f->f);
    if (delta) *delta = r.delta;
    if (distance_sq) *distance_sq = r.basic.distance_sq;
    if (improved_distance_sq) *improved_distance_sq = r.improved.distance_sq;
    if (pass) *pass = (r.basic_check.pass && r.improved_check.pass) ? 1 : 0;
  });
}

wg_status wg_run(const char* config_json, const char* format, const char* view, int64_t seed, double tolerance,
                 int timings, char** report, int* exit_code) {
  WG_REQUIRE(config_json);
  WG_REQUIRE(report);
  WG_REQUIRE(exit_code);
  *report = nullptr;
  *exit_code = wgauss::kExitConfig;
  const std::string fmt = format ? format : "json", vw = view ? view : "verify";
  wgauss::ReportFormat rf;
  if (fmt == "json") rf = wgauss::ReportFormat::json;
  else if (fmt == "csv") rf = wgauss::ReportFormat::csv;
  else return fail(WG_ERR_CONFIG, "unknown report format '" + fmt + "'");
  wgauss::ReportView rv;
  if (vw == "verify") rv = wgauss::ReportView::verify;
  else if (vw == "sharpness") rv = wgauss::ReportView::sharpness;
  else if (vw == "spectrum") rv = wgauss::ReportView::spectrum;
  else if (vw == "report") rv = wgauss::ReportView::summary;
  else return fail(WG_ERR_CONFIG, "unknown report view '" + vw + "'");
  return guarded([&] {
    wgauss::RunOverrides ov;
    if (seed >= 0) ov.seed = static_cast<std::uint64_t>(seed);
    if (tolerance > 0) ov.tolerance = tolerance;
    wgauss::RunConfig cfg = wgauss::parse_config_text(config_json, ov);
    wgauss::RunReport r = wgauss::run(cfg);
    *report = copy_string(wgauss::emit(r, rf, rv, timings != 0));
    *exit_code = r.pass ? wgauss::kExitPass : wgauss::kExitFailure;
  });
}

}  // extern "C"
