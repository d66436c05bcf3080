/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/stability.hpp"

#include <algorithm>
#include <cmath>

namespace wgauss {

std::string to_string(GaussianFamily f) { return f == GaussianFamily::hupw ? "gaussian" : "affine_gaussian"; }

namespace {

// Inner products of f against the family generators, reused across lambda.
class FamilyProjector {
 public:
  FamilyProjector(const Weight& w, const ScalarField& f, const RuleTarget& target)
      : nu_(Measure::lebesgue(w, target)), f_(f), n_(w.dim()) {
    if (!w.degree()) raise(ErrorCode::contract, "family distances need a homogeneous weight");
    if (!f.envelope().decays())
      raise(ErrorCode::decay_contract, "family distances need a Gaussian-decay field, got " + to_string(f.envelope()));
    n_alpha_ = n_ + *w.degree();
    rate_ = f.envelope().rate;
    fpar_ = f.parities();
    for (int k = 0; k < n_; ++k) symmetric_.push_back(nu_.symmetric_in(k));

    norm_sq_ = nu_.integrate(Integrand{[&](const Vec& x) { return f_.value(x) * f_.value(x); },
                                       envelope_power(f.envelope(), 2), abs_parity(f)})
                   .value;
    if (!(norm_sq_ > 0)) raise(ErrorCode::degenerate_input, "field vanishes under w dx");

    // int phi_i phi_j e^{-|x|^2} w dx with phi_0 = 1, phi_k = x_k; scaled by
    // homogeneity for other lambda
    M1_ = Eigen::MatrixXd::Zero(n_ + 1, n_ + 1);
    for (int i = 0; i <= n_; ++i)
      for (int j = i; j <= n_; ++j) {
        std::vector<Sym> par(n_, Sym::even);
        if (i > 0) par[i - 1] = sym_product(par[i - 1], Sym::odd);
        if (j > 0) par[j - 1] = sym_product(par[j - 1], Sym::odd);
        M1_(i, j) = M1_(j, i) =
            nu_.integrate(Integrand{[i, j](const Vec& x) {
                                      double v = std::exp(-x.squaredNorm());
                                      if (i > 0) v *= x(i - 1);
                                      if (j > 0) v *= x(j - 1);
                                      return v;
                                    },
                                    Envelope::gaussian(1.0), par})
                .value;
      }
  }

  double norm_sq() const { return norm_sq_; }
  int dim() const { return n_; }

  // residual^2 and the fitted coefficients (c, d)
  double residual(double lambda, GaussianFamily fam, Eigen::VectorXd* coef) const {
    const int m = fam == GaussianFamily::hupw ? 1 : n_ + 1;
    Eigen::MatrixXd M(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) M(i, j) = std::pow(lambda, n_alpha_ + (i > 0) + (j > 0)) * M1_(i, j);

    std::vector<bool> zero(m, false);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < n_; ++k) {
        Sym s = k < static_cast<int>(fpar_.size()) ? fpar_[k] : Sym::none;
        if (i == k + 1) s = sym_product(s, Sym::odd);
        if (s == Sym::odd && symmetric_[k]) zero[i] = true;
      }

    // f phi_i e^{-|x|^2/(2 lambda^2)} folded against the rule at the combined rate
    const double c = rate_ + 0.5 / (lambda * lambda);
    auto rule = nu_.rule_at(1.0 / std::sqrt(2.0 * c));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < rule->size(); ++i) {
      Vec x = rule->node(i);
      double v = rule->weights[i] * f_.value(x) * std::exp(rate_ * x.squaredNorm());
      if (!std::isfinite(v)) raise(ErrorCode::evaluation, "family inner product is not finite at a node");
      b(0) += v;
      for (int k = 1; k < m; ++k) b(k) += v * x(k - 1);
    }
    for (int i = 0; i < m; ++i)
      if (zero[i]) b(i) = 0.0;
    Eigen::VectorXd a = M.ldlt().solve(b);
    if (coef) *coef = a;
    return norm_sq_ - b.dot(a);
  }

 private:
  Measure nu_;
  ScalarField f_;
  int n_;
  double n_alpha_ = 0.0, rate_ = 0.0, norm_sq_ = 0.0;
  std::vector<Sym> fpar_;
  std::vector<bool> symmetric_;
  Eigen::MatrixXd M1_;
};

FamilyFit fit(const FamilyProjector& proj, GaussianFamily fam) {
  constexpr int kScan = 16;
  const double lo = std::log(1e-2), hi = std::log(1e2);
  FamilyFit out;
  out.family = fam;
  out.norm_sq = proj.norm_sq();
  out.d = Vec::Zero(proj.dim());

  auto eval = [&](double u) {
    ++out.evaluations;
    return proj.residual(std::exp(u), fam, nullptr);
  };
  std::vector<double> us(kScan), vs(kScan);
  for (int i = 0; i < kScan; ++i) {
    us[i] = lo + (hi - lo) * i / (kScan - 1);
    vs[i] = eval(us[i]);
  }
  const auto [mn, mx] = std::minmax_element(vs.begin(), vs.end());
  if (*mx - *mn <= 1e-13 * proj.norm_sq()) {
    out.degenerate = true;
    out.distance_sq = proj.norm_sq();
    out.distance = std::sqrt(out.distance_sq);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
  }
  const int best = static_cast<int>(mn - vs.begin());
  double a = us[std::max(best - 1, 0)], b = us[std::min(best + 1, kScan - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  double best_u = us[best], best_v = vs[best];
  while (b - a > 1e-10) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = eval(x2);
    }
    if (f1 < best_v) best_v = f1, best_u = x1;
    if (f2 < best_v) best_v = f2, best_u = x2;
  }
  out.bracket_lo = a;
  out.bracket_hi = b;
  out.lambda = std::exp(best_u);
  Eigen::VectorXd coef;
  out.distance_sq = std::max(0.0, proj.residual(out.lambda, fam, &coef));
  out.distance = std::sqrt(out.distance_sq);
  out.c = coef(0);
  for (int k = 1; k < coef.size(); ++k) out.d(k - 1) = coef(k);
  return out;
}

}  // namespace

double family_residual_sq(const Weight& w, const ScalarField& f, GaussianFamily family, double lambda,
                          const RuleTarget& target) {
  if (!(lambda > 0)) raise(ErrorCode::parameter, "family scale must be positive");
  return FamilyProjector(w, f, target).residual(lambda, family, nullptr);
}

FamilyFit distance_to_family(const Weight& w, const ScalarField& f, GaussianFamily family, const RuleTarget& target) {
  return fit(FamilyProjector(w, f, target), family);
}

StabilityReport check_hup_stability(const Weight& w, const ScalarField& f, const RuleTarget& target,
                                    const Tolerance& tol) {
  if (!w.homogeneous()) raise(ErrorCode::contract, "uncertainty stability needs a homogeneous weight");
  require_convex_support(w);
  StabilityReport r;
  r.field = f.name();
  r.curvature = w.curvature();
  const double rho = 1.0 + r.curvature;
  HupDeficit h = hup_deficit(Measure::lebesgue(w, target), f);
  r.delta = h.delta;
  r.lambda_star = h.lambda_star;
  FamilyProjector proj(w, f, target);
  r.basic = fit(proj, GaussianFamily::hupw);
  r.improved = fit(proj, GaussianFamily::affine_gaussian);

  r.basic_check = make_check("hup_stability.basic", f.name(), std::nullopt, std::nullopt, rho * r.basic.distance_sq,
                             r.delta, rho, tol);
  r.improved_check = make_check("hup_stability.improved", f.name(), std::nullopt, std::nullopt,
                                0.5 * rho * r.improved.distance_sq, r.delta - rho * r.basic.distance_sq, rho, tol);
  for (auto* chk : {&r.basic_check, &r.improved_check}) {
    chk->diagnostics = {{"delta", r.delta},
                        {"lambda_star", r.lambda_star},
                        {"distance_sq", r.basic.distance_sq},
                        {"improved_distance_sq", r.improved.distance_sq},
                        {"argmin_lambda", r.basic.lambda},
                        {"argmin_c", r.basic.c},
                        {"improved_argmin_lambda", r.improved.lambda},
                        {"degenerate", r.basic.degenerate ? 1.0 : 0.0},
                        {"identity_residual", h.identity_residual}};
  }
  return r;
}

}  // namespace wgauss
