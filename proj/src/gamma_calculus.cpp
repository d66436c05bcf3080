/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/gamma_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wgauss {

double apply_generator(const Weight& w, const ScalarField& f, const Vec& x) {
  Vec g = f.gradient(x);
  return f.laplacian(x) - x.dot(g) + w.grad_log(x).dot(g);
}

double carre_du_champ(const ScalarField& f, const ScalarField& g, const Vec& x) {
  return f.gradient(x).dot(g.gradient(x));
}

double gamma2(const Weight& w, const ScalarField& f, const Vec& x) {
  Vec g = f.gradient(x);
  Mat h = f.hessian(x);
  return h.squaredNorm() + g.squaredNorm() - g.dot(w.hess_log(x) * g);
}

double cd_margin(const Weight& w, const ScalarField& f, const std::vector<Vec>& sample) {
  const double rho = 1.0 + w.curvature();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : sample) best = std::min(best, gamma2(w, f, x) - rho * f.gradient(x).squaredNorm());
  return sample.empty() ? 0.0 : best;
}

namespace {

// L applied to a scalar function known only through point values.
template <class F>
double generator_fd(const Weight& w, const F& fn, const Vec& x, double h) {
  const int n = static_cast<int>(x.size());
  const double f0 = fn(x);
  Vec grad(n);
  double lap = 0;
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    double fp = fn(xp), fm = fn(xm);
    grad(k) = (fp - fm) / (2 * h);
    lap += (fp - 2 * f0 + fm) / (h * h);
  }
  return lap - x.dot(grad) + w.grad_log(x).dot(grad);
}

}  // namespace

double bochner_residual(const Weight& w, const ScalarField& f, const Vec& x, std::optional<double> h) {
  const double step = h.value_or(1e-4 * (1.0 + x.norm()));
  if (!(step > 0)) raise(ErrorCode::parameter, "finite-difference step must be positive");
  const int n = static_cast<int>(x.size());
  auto gam = [&](const Vec& y) { return f.gradient(y).squaredNorm(); };
  auto lf = [&](const Vec& y) { return apply_generator(w, f, y); };
  double l_gamma = generator_fd(w, gam, x, step);
  Vec grad_lf(n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    grad_lf(k) = (lf(xp) - lf(xm)) / (2 * step);
  }
  return std::abs(0.5 * l_gamma - f.gradient(x).dot(grad_lf) - gamma2(w, f, x));
}

double neumann_residual(const ScalarField& f, const Cone& cone, const std::vector<Vec>& boundary) {
  if (!cone.has_boundary()) raise(ErrorCode::no_boundary, "full space has no boundary");
  double worst = 0;
  for (const auto& x : boundary) worst = std::max(worst, std::abs(f.gradient(x).dot(cone.boundary_normal(x))));
  return worst;
}

std::vector<Vec> interior_sample(const Weight& w, std::size_t count, std::uint64_t seed, double spread,
                                 double margin) {
  const int n = w.dim();
  std::vector<Vec> out;
  out.reserve(count);
  std::uint64_t counter = 0;
  const std::uint64_t budget = 1000 * (count + 10);
  while (out.size() < count && counter < budget) {
    Vec x(n);
    for (int k = 0; k < n; ++k) x(k) = spread * standard_normal(seed, counter++);
    if (w.cone().facets_orthogonal()) x = w.cone().fold(x);
    bool ok = true;
    for (const auto& nu : w.cone().facets())
      if (x.dot(nu) < margin) ok = false;
    if (!ok) continue;
    try {
      Mat hl = w.hess_log(x);
      if (!hl.allFinite() || hl.cwiseAbs().maxCoeff() > 1.0 / (margin * margin)) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back(x);
  }
  if (out.size() < count) raise(ErrorCode::domain, "could not place enough interior sample points");
  return out;
}

}  // namespace wgauss
