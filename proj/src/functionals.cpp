/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/functionals.hpp"

#include <cmath>
#include <cstdio>

namespace wgauss {

namespace {

double err_of(const Integral& i) {
  return i.std_error > 0 ? i.std_error : kDeclaredIntegrationTolerance * std::abs(i.value);
}

void check_q(double q) {
  if (!(q >= 1) || !std::isfinite(q)) raise(ErrorCode::parameter, "exponent q must be >= 1");
}

void require_lebesgue(const Measure& nu) {
  if (nu.normalized()) raise(ErrorCode::contract, "uncertainty functionals integrate against w dx");
}

}  // namespace

std::string describe(const Measure& m) {
  char buf[64];
  if (m.normalized())
    std::snprintf(buf, sizeof buf, "gaussian(scale=%.6g)", *m.scale());
  else
    std::snprintf(buf, sizeof buf, "lebesgue");
  return m.weight().kind_name() + ":" + buf;
}

std::vector<Sym> abs_parity(const ScalarField& f) {
  std::vector<Sym> out(f.dim());
  for (int k = 0; k < f.dim(); ++k) out[k] = f.parity(k) == Sym::none ? Sym::none : Sym::even;
  return out;
}

FunctionalValue lq_norm(const Measure& m, const ScalarField& f, double q) {
  check_q(q);
  Integral i = m.integrate(Integrand{[&](const Vec& x) { return std::pow(std::abs(f.value(x)), q); },
                                     envelope_power(f.envelope(), q), abs_parity(f)});
  double v = std::pow(i.value, 1.0 / q);
  double e = i.value > 0 ? v * err_of(i) / (q * i.value) : 0.0;
  return {"lq_norm", v, describe(m), e};
}

FunctionalValue variance(const Measure& m, const ScalarField& f) {
  if (!m.normalized()) raise(ErrorCode::contract, "variance needs a probability measure");
  Integral i1 = m.integrate(f);
  Integral i2 = m.integrate(Integrand{[&](const Vec& x) {
                                        double v = f.value(x);
                                        return v * v;
                                      },
                                      envelope_power(f.envelope(), 2), abs_parity(f)});
  double v = i2.value - i1.value * i1.value;
  return {"variance", v, describe(m), err_of(i2) + 2 * std::abs(i1.value) * err_of(i1)};
}

FunctionalValue entropy(const Measure& m, const ScalarField& g) {
  auto glogg = [&](const Vec& x) {
    double v = g.value(x);
    if (v < 0) raise(ErrorCode::domain, "entropy needs a nonnegative integrand");
    return v > 0 ? v * std::log(v) : 0.0;
  };
  Integral i1 = m.integrate(g);
  Integral i2 = m.integrate(Integrand{glogg, g.envelope(), g.parities()});
  double mass = i1.value;
  double v = i2.value - (mass > 0 ? mass * std::log(mass) : 0.0);
  return {"entropy", v, describe(m), err_of(i2) + std::abs(1 + std::log(std::max(mass, 1e-300))) * err_of(i1)};
}

FunctionalValue entropy_of_square(const Measure& m, const ScalarField& f) {
  return entropy(m, fields::product(f, f));
}

FunctionalValue dirichlet_energy(const Measure& m, const ScalarField& f, double q) {
  check_q(q);
  Integral i = m.integrate(Integrand{[&](const Vec& x) { return std::pow(f.gradient(x).squaredNorm(), 0.5 * q); },
                                     envelope_power(f.envelope(), q), abs_parity(f)});
  return {"dirichlet_energy", i.value, describe(m), err_of(i)};
}

HupMoments hup_moments(const Measure& nu, const ScalarField& f) {
  require_lebesgue(nu);
  Envelope e2 = envelope_power(f.envelope(), 2);
  if (!e2.decays())
    raise(ErrorCode::decay_contract, "field " + f.name() + " has no Gaussian decay envelope");
  auto par = abs_parity(f);
  HupMoments h;
  h.A = nu.integrate(Integrand{[&](const Vec& x) { return f.gradient(x).squaredNorm(); }, e2, par}).value;
  h.B = nu.integrate(Integrand{[&](const Vec& x) {
                                 double v = f.value(x);
                                 return v * v;
                               },
                               e2, par})
            .value;
  h.D = nu.integrate(Integrand{[&](const Vec& x) {
                                 double v = f.value(x);
                                 return v * v * x.squaredNorm();
                               },
                               e2, par})
            .value;
  return h;
}

double optimal_scale(const Measure& nu, const ScalarField& f) {
  HupMoments h = hup_moments(nu, f);
  if (!(h.B > 0) || !(h.A > 0)) raise(ErrorCode::degenerate_input, "field is zero (or constant) under w dx");
  return std::pow(h.D / h.A, 0.25);
}

HupDeficit hup_deficit(const Measure& nu, const ScalarField& f) {
  const Weight& w = nu.weight();
  if (!w.degree()) raise(ErrorCode::contract, "the uncertainty deficit needs a homogeneous weight");
  const double n_alpha = w.dim() + *w.degree();
  HupDeficit out;
  out.moments = hup_moments(nu, f);
  const auto& h = out.moments;
  if (!(h.B > 0) || !(h.A > 0)) raise(ErrorCode::degenerate_input, "field is zero (or constant) under w dx");
  out.delta = std::sqrt(h.A) * std::sqrt(h.D) - 0.5 * n_alpha * h.B;
  out.lambda_star = std::pow(h.D / h.A, 0.25);
  // (lambda^2/2) int |grad f + f x / lambda^2|^2 w dx, the gradient of
  // f e^{|x|^2/(2 lambda^2)} against e^{-|x|^2/lambda^2} w written out
  const double l2 = out.lambda_star * out.lambda_star;
  out.identity_value =
      0.5 * l2 *
      nu.integrate(Integrand{[&](const Vec& x) { return (f.gradient(x) + f.value(x) * x / l2).squaredNorm(); },
                             envelope_power(f.envelope(), 2), abs_parity(f)})
          .value;
  out.identity_residual = std::abs(out.delta - out.identity_value);
  return out;
}

}  // namespace wgauss
