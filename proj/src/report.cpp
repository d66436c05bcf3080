/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "wgauss/gamma_calculus.hpp"
#include "wgauss/spectral.hpp"
#include "wgauss/stability.hpp"

#ifndef WGAUSS_VERSION
#define WGAUSS_VERSION "0.0.0"
#endif

namespace wgauss {

using nlohmann::json;

namespace {

// |lhs - rhs| <= tolerance, written as lhs' = |lhs - rhs| <= 0
InequalityCheck equality_check(std::string theorem, const std::string& field, double a, double b, double rel) {
  Tolerance t;
  t.absolute = rel * (1.0 + std::abs(a) + std::abs(b));
  auto c = make_check(std::move(theorem), field, std::nullopt, std::nullopt, std::abs(a - b), 0.0, 0.0, t);
  c.diagnostics = {{"first", a}, {"second", b}};
  return c;
}

struct Context {
  const RunConfig& cfg;
  Measure mu;
  Measure nu;
  std::vector<const FieldEntry*> admissible;
  std::vector<json> inadmissible;
};

void for_decaying(const Context& ctx, SuiteResult& r, const std::function<void(const ScalarField&)>& fn) {
  for (const auto& fe : ctx.cfg.fields) {
    if (!fe.field.envelope().decays()) {
      r.skipped.push_back({{"field", fe.field.name()}, {"reason", "needs Gaussian decay under w dx"}});
      continue;
    }
    fn(fe.field);
  }
}

void suite_beckner(const Context& ctx, SuiteResult& r) {
  for (const auto* fe : ctx.admissible)
    for (auto [p, q] : ctx.cfg.options.beckner_pairs)
      r.checks.push_back(check_beckner(ctx.mu, fe->field, p, q, ctx.cfg.tolerance));
}

void suite_poincare(const Context& ctx, SuiteResult& r) {
  for (const auto* fe : ctx.admissible)
    for (auto level : ctx.cfg.options.poincare_levels)
      r.checks.push_back(check_poincare(ctx.mu, fe->field, ctx.cfg.options.poincare_q, level, ctx.cfg.tolerance));
}

void suite_scale_poincare(const Context& ctx, SuiteResult& r) {
  std::vector<double> lambdas = ctx.cfg.options.scale_lambdas;
  if (lambdas.empty()) {
    lambdas = ctx.cfg.weight.homogeneous() ? std::vector<double>{0.5, 1.0, 2.0} : std::vector<double>{1.0};
  }
  for (const auto* fe : ctx.admissible)
    for (double lam : lambdas)
      for (auto level : ctx.cfg.options.scale_levels) {
        auto c = check_scale_poincare(ctx.cfg.weight, fe->field, lam, level, ctx.cfg.quadrature, ctx.cfg.tolerance);
        c.diagnostics["lambda"] = lam;
        r.checks.push_back(std::move(c));
      }
}

void suite_lsi(const Context& ctx, SuiteResult& r) {
  for (const auto* fe : ctx.admissible)
    for (double q : ctx.cfg.options.lsi_q) r.checks.push_back(check_lsi(ctx.mu, fe->field, q, ctx.cfg.tolerance));
}

void suite_euclidean_lsi(const Context& ctx, SuiteResult& r) {
  for_decaying(ctx, r, [&](const ScalarField& f) {
    r.checks.push_back(check_euclidean_lsi(ctx.cfg.weight, f, ctx.cfg.quadrature, ctx.cfg.tolerance));
  });
}

void suite_lsi_equivalence(const Context& ctx, SuiteResult& r) {
  json records = json::array();
  for (const auto* fe : ctx.admissible) {
    const ScalarField& F = fe->field;
    LsiEquivalence e = check_lsi_equivalence(ctx.cfg.weight, F, ctx.cfg.quadrature, ctx.cfg.tolerance);
    r.checks.push_back(e.gaussian_lsi);
    r.checks.push_back(e.tangent_step);
    const double scale = 1.0 + std::abs(e.entropy_gaussian) + std::abs(e.entropy_euclidean) + std::abs(e.A) +
                         std::abs(e.B) + std::abs(e.D);
    for (auto [name, value] : {std::pair<const char*, double>{"lsi_equivalence.forward_entropy",
                                                                e.forward_entropy_residual},
                               {"lsi_equivalence.forward_energy", e.forward_energy_residual},
                               {"lsi_equivalence.backward", e.backward_residual}}) {
      Tolerance t;
      t.absolute = 1e-7 * scale;
      r.checks.push_back(make_check(name, F.name(), std::nullopt, std::nullopt, value, 0.0, 0.0, t));
    }
    Tolerance exact;
    exact.absolute = 0.0;
    r.checks.push_back(make_check("lsi_equivalence.moment_coefficient", F.name(), std::nullopt, std::nullopt,
                                  std::abs(e.d_coefficient), 0.0, 0.0, exact));
    records.push_back({{"field", F.name()},
                       {"entropy_gaussian", e.entropy_gaussian},
                       {"entropy_euclidean", e.entropy_euclidean},
                       {"log_h_term", e.log_h_term},
                       {"energy_gaussian", e.energy_gaussian},
                       {"A", e.A},
                       {"B", e.B},
                       {"D", e.D},
                       {"d_coefficient", e.d_coefficient},
                       {"tangent_bound", e.tangent_bound},
                       {"assembled_bound", e.assembled_bound}});
  }
  r.extra["equivalence"] = std::move(records);
}

void suite_hup(const Context& ctx, SuiteResult& r) {
  const double n_alpha = ctx.cfg.weight.dim() + ctx.cfg.weight.degree().value_or(0.0);
  if (!ctx.cfg.weight.homogeneous()) raise(ErrorCode::contract, "the uncertainty suite needs a homogeneous weight");
  for_decaying(ctx, r, [&](const ScalarField& f) {
    HupDeficit h = hup_deficit(ctx.nu, f);
    auto c = make_check("hup", f.name(), std::nullopt, std::nullopt, 0.5 * n_alpha * h.moments.B,
                        std::sqrt(h.moments.A) * std::sqrt(h.moments.D), 0.5 * n_alpha, ctx.cfg.tolerance);
    c.diagnostics = {{"A", h.moments.A},           {"B", h.moments.B},
                     {"D", h.moments.D},           {"delta", h.delta},
                     {"lambda_star", h.lambda_star}, {"identity_value", h.identity_value}};
    r.checks.push_back(std::move(c));
    r.checks.push_back(equality_check("hup.identity", f.name(), h.delta, h.identity_value, 1e-8));
  });
}

json fit_json(const FamilyFit& f) {
  std::vector<double> d(f.d.data(), f.d.data() + f.d.size());
  return {{"family", to_string(f.family)}, {"distance_sq", f.distance_sq}, {"norm_sq", f.norm_sq},
          {"c", f.c},
          {"d", d},
          {"lambda", f.lambda},
          {"degenerate", f.degenerate},
          {"evaluations", f.evaluations},
          {"bracket", {f.bracket_lo, f.bracket_hi}}};
}

void suite_hup_stability(const Context& ctx, SuiteResult& r) {
  json records = json::array();
  for_decaying(ctx, r, [&](const ScalarField& f) {
    StabilityReport s = check_hup_stability(ctx.cfg.weight, f, ctx.cfg.quadrature, ctx.cfg.tolerance);
    r.checks.push_back(s.basic_check);
    r.checks.push_back(s.improved_check);
    records.push_back({{"field", s.field},
                       {"delta", s.delta},
                       {"lambda_star", s.lambda_star},
                       {"distance_sq", s.basic.distance_sq},
                       {"improved_distance_sq", s.improved.distance_sq},
                       {"argmin", fit_json(s.basic)},
                       {"improved_argmin", fit_json(s.improved)}});
  });
  r.extra["stability"] = std::move(records);
}

void suite_spectral(const Context& ctx, SuiteResult& r) {
  const auto& opt = ctx.cfg.options;
  const int degree = opt.spectral_degree.value_or(default_galerkin_degree(ctx.cfg.weight.dim()));
  GalerkinSystem sys = build_galerkin(ctx.mu, degree);
  SpectralResult spec = spectral_gap(sys);
  const double rho = 1.0 + ctx.cfg.weight.curvature();

  auto gap = make_check("spectral.gap", "", std::nullopt, std::nullopt, rho, spec.gap, rho, ctx.cfg.tolerance);
  gap.diagnostics = {{"gap_previous", spec.gap_previous}, {"convergence_delta", spec.convergence_delta}};
  r.checks.push_back(std::move(gap));
  Tolerance conv;
  conv.absolute = 0.0;
  auto cc = make_check("spectral.convergence", "", std::nullopt, std::nullopt, spec.convergence_delta,
                       1e-4 * spec.gap, 0.0, conv);
  cc.informational = true;
  r.checks.push_back(std::move(cc));

  std::vector<double> ev(spec.eigenvalues.begin(),
                         spec.eigenvalues.begin() + std::min<std::size_t>(8, spec.eigenvalues.size()));
  r.extra["spectrum"] = {{"degree", spec.degree},
                         {"basis_size", sys.size()},
                         {"gap", spec.gap},
                         {"gap_previous", spec.gap_previous},
                         {"convergence_delta", spec.convergence_delta},
                         {"unconverged", spec.unconverged},
                         {"orthonormality_residual", sys.orthonormality_residual()},
                         {"eigenvalues", ev}};

  for (const auto* fe : ctx.admissible) {
    const ScalarField& f = fe->field;
    double mean = ctx.mu.integrate(f).value;
    ScalarField centred = fields::add_constant(f, -mean).renamed(f.name() + " - mean");
    if (sys.project(centred).tail(sys.size() - 1).norm() < 1e-12) {
      r.skipped.push_back({{"field", f.name()}, {"reason", "constant field has no Poisson problem"}});
      continue;
    }
    r.checks.push_back(duality_stability_residual(sys, centred, ctx.cfg.tolerance));
  }

  json tables = json::array();
  std::size_t used = 0;
  for (const auto* fe : ctx.admissible) {
    if (used++ >= opt.decay_fields) break;
    for (auto [p, q] : opt.decay_pairs) {
      DecayTable t = semigroup_decay_check(sys, spec, fe->field, p, q, opt.decay_grid);
      double worst = -std::numeric_limits<double>::infinity(), worst_step = -std::numeric_limits<double>::infinity();
      json rows = json::array();
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        rows.push_back({{"t", row.t}, {"phi", row.phi}, {"quotient", row.quotient}, {"bound", row.bound}});
        if (i + 1 < t.rows.size()) {
          worst = std::max(worst, row.quotient / row.bound);
          worst_step = std::max(worst_step, t.rows[i + 1].phi - row.phi);
        }
      }
      auto c = make_check("semigroup_decay", fe->field.name(), p, q, worst, 1.0, rho, ctx.cfg.tolerance);
      c.pass = t.pass;
      c.verdict = t.pass ? "pass" : "fail";
      c.diagnostics = {{"max_step", worst_step},
                       {"shift", t.shift},
                       {"phi0_vs_norm_q", t.phi0_vs_norm_q},
                       {"phi_limit", t.phi_limit},
                       {"gradient_bound_violation", t.gradient_bound_violation}};
      r.checks.push_back(std::move(c));
      tables.push_back({{"field", fe->field.name()}, {"p", p}, {"q", q}, {"rows", rows}, {"pass", t.pass}});
    }
  }
  r.extra["decay"] = std::move(tables);
}

void suite_gamma(const Context& ctx, SuiteResult& r) {
  const Weight& w = ctx.cfg.weight;
  auto sample = interior_sample(w, ctx.cfg.options.gamma_points, ctx.cfg.quadrature.seed);
  const std::size_t nb = std::min<std::size_t>(sample.size(), 200);
  for (const auto& fe : ctx.cfg.fields) {
    const ScalarField& f = fe.field;
    Tolerance cd_tol;
    cd_tol.absolute = 1e-9;
    auto cd = make_check("gamma.curvature_dimension", f.name(), std::nullopt, std::nullopt, 0.0,
                         cd_margin(w, f, sample), 1.0 + w.curvature(), cd_tol);
    cd.diagnostics = {{"points", static_cast<double>(sample.size())}};
    r.checks.push_back(std::move(cd));
    double worst = 0;
    for (std::size_t i = 0; i < nb; ++i)
      worst = std::max(worst, bochner_residual(w, f, sample[i]) / (1.0 + std::abs(gamma2(w, f, sample[i]))));
    Tolerance b_tol;
    b_tol.absolute = 1e-5;
    r.checks.push_back(
        make_check("gamma.bochner", f.name(), std::nullopt, std::nullopt, worst, 0.0, 0.0, b_tol));
  }
  for (std::size_t i = 0; i < ctx.admissible.size(); ++i) {
    const ScalarField& f = ctx.admissible[i]->field;
    const ScalarField& g = ctx.admissible[(i + 1) % ctx.admissible.size()]->field;
    auto parity = [&]() {
      std::vector<Sym> s;
      for (int k = 0; k < w.dim(); ++k) s.push_back(sym_product(f.parity(k), g.parity(k)));
      return s;
    }();
    double a = ctx.mu.integrate(Integrand{[&](const Vec& x) { return f.value(x) * apply_generator(w, g, x); },
                                          Envelope::none(), parity})
                   .value;
    double b = -ctx.mu.integrate(Integrand{[&](const Vec& x) { return f.gradient(x).dot(g.gradient(x)); },
                                           Envelope::none(), parity})
                    .value;
    double c = ctx.mu.integrate(Integrand{[&](const Vec& x) { return g.value(x) * apply_generator(w, f, x); },
                                          Envelope::none(), parity})
                   .value;
    auto ibp = equality_check("gamma.integration_by_parts", f.name() + " | " + g.name(), a, b, 1e-7);
    ibp.diagnostics["swapped"] = c;
    r.checks.push_back(std::move(ibp));
    r.checks.push_back(equality_check("gamma.symmetry", f.name() + " | " + g.name(), a, c, 1e-7));
  }
}

void attach_sweeps(const Context& ctx, SuiteResult& r) {
  json tables = json::array();
  for (const auto& s : ctx.cfg.options.sweeps) {
    if (to_string(s.checker) != r.suite) continue;
    SweepTable t = sharpness_sweep(s.checker, ctx.mu, s.perturbation.field, s.eps);
    json rows = json::array();
    for (const auto& row : t.rows)
      rows.push_back({{"parameter", row.parameter},
                      {"lhs", row.lhs},
                      {"rhs", row.rhs},
                      {"deficit", row.deficit},
                      {"ratio", row.ratio},
                      {"scaled_deficit", row.scaled_deficit}});
    json tj = {{"checker", t.checker}, {"family", t.family}, {"rows", rows}};
    tj["extrapolated_ratio"] = t.extrapolated_ratio ? json(*t.extrapolated_ratio) : json();
    tables.push_back(std::move(tj));
  }
  if (!tables.empty()) r.extra["sweeps"] = std::move(tables);
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  RunReport report;
  report.config = cfg.echo;
  report.version = WGAUSS_VERSION;
  Context ctx{cfg, Measure::gaussian(cfg.weight, 1.0, cfg.quadrature), Measure::lebesgue(cfg.weight, cfg.quadrature),
              {}, {}};
  for (const auto& fe : cfg.fields) {
    try {
      require_admissible_field(cfg.weight, fe.field);
      ctx.admissible.push_back(&fe);
    } catch (const Error& e) {
      ctx.inadmissible.push_back({{"field", fe.field.name()}, {"reason", e.what()}});
    }
  }
  const std::map<std::string, void (*)(const Context&, SuiteResult&)> table{
      {"beckner", suite_beckner},
      {"poincare", suite_poincare},
      {"scale_poincare", suite_scale_poincare},
      {"lsi", suite_lsi},
      {"euclidean_lsi", suite_euclidean_lsi},
      {"lsi_equivalence", suite_lsi_equivalence},
      {"hup", suite_hup},
      {"hup_stability", suite_hup_stability},
      {"spectral", suite_spectral},
      {"gamma_calculus", suite_gamma}};
  static const std::set<std::string> uses_admissible{"beckner", "poincare", "scale_poincare", "lsi",
                                                     "lsi_equivalence", "spectral"};

  for (const auto& name : cfg.suites) {
    SuiteResult r;
    r.suite = name;
    auto start = std::chrono::steady_clock::now();
    try {
      if (uses_admissible.count(name)) r.skipped = ctx.inadmissible;
      table.at(name)(ctx, r);
      attach_sweeps(ctx, r);
    } catch (const Error& e) {
      r.error = e.what();
    } catch (const std::exception& e) {
      r.error = std::string("internal: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = !r.error;
    for (const auto& c : r.checks)
      if (!c.informational && !c.pass) r.pass = false;
    report.pass = report.pass && r.pass;
    report.suites.push_back(std::move(r));
  }
  return report;
}

json check_to_json(const InequalityCheck& c) {
  json d = json::object();
  for (const auto& [k, v] : c.diagnostics) d[k] = v;
  return {{"theorem", c.theorem},
          {"field", c.field},
          {"p", c.p ? json(*c.p) : json()},
          {"q", c.q ? json(*c.q) : json()},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"constant", c.constant},
          {"deficit", c.deficit},
          {"tolerance", c.tolerance},
          {"pass", c.pass},
          {"informational", c.informational},
          {"verdict", c.verdict},
          {"diagnostics", d}};
}

namespace {

bool tight(const InequalityCheck& c) { return std::abs(c.deficit) <= c.tolerance; }

std::vector<const InequalityCheck*> view_checks(const RunReport& report, ReportView view) {
  std::vector<const InequalityCheck*> out;
  for (const auto& s : report.suites) {
    if (view == ReportView::spectrum && s.suite != "spectral") continue;
    for (const auto& c : s.checks)
      if (view != ReportView::sharpness || tight(c)) out.push_back(&c);
  }
  return out;
}

}  // namespace

json to_json(const RunReport& report, ReportView view, bool timings) {
  json suites = json::array();
  for (const auto& s : report.suites) {
    if (view == ReportView::spectrum && s.suite != "spectral") continue;
    json sj;
    sj["suite"] = s.suite;
    sj["pass"] = s.pass;
    if (s.error) sj["error"] = *s.error;
    if (timings) sj["seconds"] = s.seconds;
    if (view == ReportView::summary) {
      int failed = 0, info = 0;
      for (const auto& c : s.checks) {
        if (c.informational) ++info;
        else if (!c.pass) ++failed;
      }
      sj["checks"] = s.checks.size();
      sj["failed"] = failed;
      sj["informational"] = info;
      suites.push_back(std::move(sj));
      continue;
    }
    json checks = json::array();
    for (const auto& c : s.checks)
      if (view != ReportView::sharpness || tight(c)) checks.push_back(check_to_json(c));
    sj["checks"] = std::move(checks);
    if (view == ReportView::sharpness) {
      if (s.extra.contains("sweeps")) sj["sweeps"] = s.extra.at("sweeps");
    } else {
      for (auto it = s.extra.begin(); it != s.extra.end(); ++it) sj[it.key()] = it.value();
      sj["skipped"] = s.skipped;
    }
    suites.push_back(std::move(sj));
  }
  return {{"config", report.config}, {"version", report.version}, {"suites", suites}, {"pass", report.pass}};
}

namespace {

void dump_to(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' '), close(static_cast<std::size_t>(indent), ' ');
  char buf[40];
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump_to(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_to(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default: out += j.dump();
  }
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_to(j, out, 0);
  out += "\n";
  return out;
}

std::string emit(const RunReport& report, ReportFormat format, ReportView view, bool timings) {
  if (format == ReportFormat::json) return dump_json(to_json(report, view, timings));
  std::ostringstream os;
  if (view == ReportView::summary) {
    os << "suite,checks,failed,pass\n";
    for (const auto& s : report.suites) {
      int failed = 0;
      for (const auto& c : s.checks) failed += (!c.informational && !c.pass);
      os << s.suite << ',' << s.checks.size() << ',' << failed << ',' << (s.pass ? "true" : "false") << '\n';
    }
    return os.str();
  }
  os << "theorem,lhs,rhs,deficit,pass\n";
  for (const auto* c : view_checks(report, view))
  {
    // a deficit below the printed resolution of both sides is shown as 0
    const double resolution = 5e-13 * std::max(std::abs(c->lhs), std::abs(c->rhs));
    const double deficit = std::abs(c->deficit) <= resolution ? 0.0 : c->deficit;
    os << c->theorem << ',' << csv_number(c->lhs) << ',' << csv_number(c->rhs) << ',' << csv_number(deficit) << ','
       << (c->pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace wgauss
