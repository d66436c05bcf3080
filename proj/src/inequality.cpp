/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wgauss/gamma_calculus.hpp"

namespace wgauss {

namespace {

// Parity of f(x) * x_k (k < 0: f alone).
std::vector<Sym> times_axis(const std::vector<Sym>& par, int k) {
  std::vector<Sym> out = par;
  if (k >= 0) out[k] = sym_product(out[k], Sym::odd);
  return out;
}

std::vector<Sym> squared(const ScalarField& f) { return abs_parity(f); }

double integral_f_times(const Measure& mu, const ScalarField& f, int k) {
  return mu
      .integrate(Integrand{[&f, k](const Vec& x) { return f.value(x) * (k < 0 ? 1.0 : x(k)); }, f.envelope(),
                           times_axis(f.parities(), k)})
      .value;
}

double integral_x(const Measure& mu, int i, int j) {
  std::vector<Sym> par(mu.dim(), Sym::even);
  if (i >= 0) par[i] = sym_product(par[i], Sym::odd);
  if (j >= 0) par[j] = sym_product(par[j], Sym::odd);
  return mu
      .integrate(Integrand{[i, j](const Vec& x) { return (i < 0 ? 1.0 : x(i)) * (j < 0 ? 1.0 : x(j)); },
                           Envelope::polynomial(), par})
      .value;
}

double integral_sq(const Measure& mu, const ScalarField& f) {
  return mu
      .integrate(Integrand{[&f](const Vec& x) {
                             double v = f.value(x);
                             return v * v;
                           },
                           envelope_power(f.envelope(), 2), squared(f)})
      .value;
}

// inf over (c, d) of int |f - c - d.x|^2 dmu
double affine_residual(const Measure& mu, const ScalarField& f, double ff) {
  const int n = mu.dim();
  Eigen::MatrixXd G(n + 1, n + 1);
  Eigen::VectorXd b(n + 1);
  for (int i = -1; i < n; ++i) {
    b(i + 1) = integral_f_times(mu, f, i);
    for (int j = i; j < n; ++j) G(i + 1, j + 1) = G(j + 1, i + 1) = integral_x(mu, i, j);
  }
  Eigen::VectorXd c = G.ldlt().solve(b);
  return std::max(ff - b.dot(c), 0.0);
}

double rho_of(const Measure& mu) { return 1.0 + mu.weight().curvature(); }

void require_probability(const Measure& mu) {
  if (!mu.normalized()) raise(ErrorCode::contract, "this check needs the Gaussian probability measure");
}

// Exact rational arithmetic for the symbolic assembly of coefficients.
struct Rational {
  long num = 0, den = 1;
  Rational(long n = 0, long d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) num = -num, den = -den;
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace

double Tolerance::resolve(double lhs, double rhs) const {
  if (absolute) return *absolute;
  return relative * (1.0 + std::abs(lhs) + std::abs(rhs));
}

InequalityCheck make_check(std::string theorem, const std::string& field, std::optional<double> p,
                           std::optional<double> q, double lhs, double rhs, double constant, const Tolerance& tol) {
  InequalityCheck c;
  c.theorem = std::move(theorem);
  c.field = field;
  c.p = p;
  c.q = q;
  c.lhs = lhs;
  c.rhs = rhs;
  c.constant = constant;
  c.deficit = rhs - lhs;
  c.tolerance = tol.resolve(lhs, rhs);
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) raise(ErrorCode::evaluation, "non-finite side in " + c.theorem);
  c.pass = c.deficit >= -c.tolerance;
  c.verdict = c.pass ? "pass" : "fail";
  return c;
}

void require_admissible_field(const Weight& w, const ScalarField& f) {
  require_convex_support(w);
  const Cone& cone = w.cone();
  if (!cone.has_boundary()) return;
  if (auto signs = cone.axis_signs()) {
    std::vector<int> restricted;
    for (int k = 0; k < cone.dim(); ++k)
      if ((*signs)[k] != 0) restricted.push_back(k);
    if (f.even_in_all(restricted)) return;
  }
  double r = neumann_residual(f, cone, cone.boundary_sample(256, 0x5eed));
  if (r > 1e-8)
    raise(ErrorCode::contract, "field " + f.name() + " violates the Neumann condition (residual " +
                                   std::to_string(r) + ")");
}

InequalityCheck check_beckner(const Measure& mu, const ScalarField& f, double p, double q, const Tolerance& tol) {
  require_probability(mu);
  if (!(p >= 1)) raise(ErrorCode::parameter, "Beckner needs p >= 1");
  if (!(p < q)) raise(ErrorCode::parameter, "Beckner needs p < q");
  require_admissible_field(mu.weight(), f);
  const double rho = rho_of(mu);
  double nq = lq_norm(mu, f, q).value, np = lq_norm(mu, f, p).value;
  double lhs = (nq * nq - np * np) / (q - p);
  double energy = dirichlet_energy(mu, f, q).value;
  double rhs = std::pow(energy, 2.0 / q) / rho;
  auto c = make_check("beckner", f.name(), p, q, lhs, rhs, 1.0 / rho, tol);
  c.diagnostics = {{"norm_q_sq", nq * nq}, {"norm_p_sq", np * np}, {"energy_q", energy}};
  if (q < 2) {
    c.informational = true;
    c.verdict = "outside verified q-range";
  }
  return c;
}

InequalityCheck check_poincare(const Measure& mu, const ScalarField& f, double q, PoincareLevel level,
                               const Tolerance& tol) {
  require_probability(mu);
  if (!(q >= 1)) raise(ErrorCode::parameter, "Poincare needs q >= 1");
  if (level != PoincareLevel::basic && q != 2)
    raise(ErrorCode::parameter, "stability levels of the Poincare inequality need q = 2");
  require_admissible_field(mu.weight(), f);
  const double rho = rho_of(mu);
  const int n = mu.dim();
  const double var = variance(mu, f).value;

  if (level == PoincareLevel::basic) {
    double energy = dirichlet_energy(mu, f, q).value;
    auto c = make_check("poincare.basic", f.name(), std::nullopt, q, var, std::pow(energy, 2.0 / q) / rho, 1.0 / rho,
                        tol);
    c.diagnostics = {{"variance", var}, {"energy_q", energy}};
    if (q < 2) {
      c.informational = true;
      c.verdict = "outside verified q-range";
    }
    return c;
  }

  const double energy = dirichlet_energy(mu, f, 2).value;
  const double rhs = energy - rho * var;
  const double fbar = integral_f_times(mu, f, -1);
  Vec fx(n), m(n);
  for (int k = 0; k < n; ++k) {
    fx(k) = integral_f_times(mu, f, k);
    m(k) = integral_x(mu, k, -1);
  }

  if (level == PoincareLevel::gradient_stability) {
    Vec v = fx - fbar * m;  // int (f - fbar) x dmu
    auto g = [&](const Vec& x) { return 0.5 * (f.gradient(x) - rho * v).squaredNorm(); };
    std::vector<Sym> par = (v.norm() == 0) ? abs_parity(f) : std::vector<Sym>();
    double lhs = mu.integrate(Integrand{g, envelope_sum(envelope_power(f.envelope(), 2), Envelope::polynomial()), par})
                     .value;
    auto c = make_check("poincare.gradient_stability", f.name(), std::nullopt, 2.0, lhs, rhs, rho, tol);
    c.diagnostics = {{"variance", var}, {"energy", energy}, {"moment_vector_norm", v.norm()}};
    return c;
  }

  // the six-term projection, term by term
  const double t5 = rho * fbar * m.squaredNorm();
  const double t6 = rho * fx.dot(m);
  auto term = [&](int i, const Vec& x) -> double {
    switch (i) {
      case 1: return f.value(x);
      case 2: return -fbar;
      case 3: return -rho * fx.dot(x);
      case 4: return rho * fbar * m.dot(x);
      case 5: return -t5;
      default: return t6;
    }
  };
  auto pi = [&](const Vec& x) {
    double s = 0;
    for (int i = 1; i <= 6; ++i) s += term(i, x);
    return s;
  };
  Envelope env = envelope_sum(envelope_power(f.envelope(), 2), Envelope::polynomial());
  double pi_sq = mu.integrate(Integrand{[&](const Vec& x) {
                                          double v = pi(x);
                                          return v * v;
                                        },
                                        env, {}})
                     .value;
  auto c = make_check("poincare.l2_stability", f.name(), std::nullopt, 2.0, 0.5 * rho * pi_sq, rhs, rho, tol);
  c.diagnostics = {{"mean_f", fbar},
                   {"moment_f_x_norm", fx.norm()},
                   {"mean_x_norm", m.norm()},
                   {"term_const_fbar_m_sq", -t5},
                   {"term_const_fx_dot_m", t6},
                   {"projection_sq", pi_sq},
                   {"variance", var},
                   {"energy", energy}};
  for (int i = 1; i <= 6; ++i) {
    double sq = mu.integrate(Integrand{[&, i](const Vec& x) {
                                         double v = term(i, x);
                                         return v * v;
                                       },
                                       env, {}})
                    .value;
    c.diagnostics["term" + std::to_string(i) + "_sq"] = sq;
  }
  return c;
}

InequalityCheck check_scale_poincare(const Weight& w, const ScalarField& f, double lambda, ScaleLevel level,
                                     const RuleTarget& target, const Tolerance& tol) {
  if (!(lambda > 0) || !std::isfinite(lambda)) raise(ErrorCode::parameter, "scale must be positive");
  if (lambda != 1.0 && !w.homogeneous())
    raise(ErrorCode::contract, "scale-dependent Poincare at scale != 1 needs a homogeneous weight");
  require_admissible_field(w, f);
  Measure mu = Measure::gaussian(w, lambda, target);
  const double rho = 1.0 + w.curvature();
  const double l2 = lambda * lambda;
  const double var = variance(mu, f).value;
  const double energy = dirichlet_energy(mu, f, 2).value;
  if (level == ScaleLevel::basic) {
    auto c = make_check("scale_poincare.basic", f.name(), std::nullopt, 2.0, var, l2 * energy / rho, l2 / rho, tol);
    c.diagnostics = {{"lambda", lambda}, {"variance", var}, {"energy", energy}};
    return c;
  }
  const double ff = integral_sq(mu, f);
  const double aff = affine_residual(mu, f, ff);
  auto c = make_check("scale_poincare.improved", f.name(), std::nullopt, 2.0, rho * var + 0.5 * rho * aff,
                      l2 * energy, rho, tol);
  c.diagnostics = {{"lambda", lambda}, {"constant_fit", var}, {"affine_fit", aff}, {"energy", energy}};
  return c;
}

InequalityCheck check_lsi(const Measure& mu, const ScalarField& f, double q, const Tolerance& tol) {
  require_probability(mu);
  if (!(q >= 1)) raise(ErrorCode::parameter, "log-Sobolev needs q >= 1");
  require_admissible_field(mu.weight(), f);
  const double rho = rho_of(mu);
  if (q == 2) {
    double mass = integral_sq(mu, f);
    if (!(mass > 0)) raise(ErrorCode::degenerate_input, "field vanishes");
    double ent = entropy_of_square(mu, f).value;
    double energy = dirichlet_energy(mu, f, 2).value;
    auto c = make_check("lsi.q2", f.name(), std::nullopt, 2.0, ent, 2.0 * energy / rho, 2.0 / rho, tol);
    c.diagnostics = {{"mass", mass}, {"entropy", ent}, {"energy", energy}};
    return c;
  }
  auto absq = [&](const Vec& x) { return std::pow(std::abs(f.value(x)), q); };
  ScalarField g(f.dim(), "|f|^q", absq, [](const Vec& x) { return Vec(Vec::Zero(x.size())); },
                [](const Vec& x) { return Mat(Mat::Zero(x.size(), x.size())); }, envelope_power(f.envelope(), q),
                abs_parity(f));
  double mass = mu.integrate(g).value;
  if (!(mass > 0)) raise(ErrorCode::degenerate_input, "field vanishes");
  double ent = entropy(mu, g).value;
  double lhs = 2.0 / (q * q) * std::pow(mass, 2.0 / q - 1.0) * ent;
  double energy = dirichlet_energy(mu, f, q).value;
  auto c = make_check("lsi.q", f.name(), std::nullopt, q, lhs, std::pow(energy, 2.0 / q) / rho, 1.0 / rho, tol);
  c.diagnostics = {{"mass_q", mass}, {"entropy_q", ent}, {"energy_q", energy}};
  if (q < 2) {
    c.informational = true;
    c.verdict = "outside verified q-range";
  }
  return c;
}

namespace {

void require_log_concave_homogeneous(const Weight& w) {
  if (!w.homogeneous()) raise(ErrorCode::contract, "Euclidean log-Sobolev needs a homogeneous weight");
  if (w.curvature() != 0.0) raise(ErrorCode::contract, "Euclidean log-Sobolev needs K_w = 0");
}

double c_lsih(double cw, double n_alpha) {
  return 4.0 * std::pow(cw, 2.0 / n_alpha) / (std::numbers::e * n_alpha);
}

}  // namespace

InequalityCheck check_euclidean_lsi(const Weight& w, const ScalarField& f, const RuleTarget& target,
                                    const Tolerance& tol) {
  require_log_concave_homogeneous(w);
  require_admissible_field(w, f);
  const double n_alpha = w.dim() + *w.degree();
  const double cw = normalization_constant(w, 1.0, target);
  Measure nu = Measure::lebesgue(w, target);
  HupMoments h = hup_moments(nu, f);
  if (!(h.B > 0)) raise(ErrorCode::degenerate_input, "field vanishes under w dx");
  double ent = entropy_of_square(nu, f).value;
  double k = c_lsih(cw, n_alpha);
  double rhs = 0.5 * n_alpha * h.B * std::log(k * h.A / h.B);
  auto c = make_check("euclidean_lsi", f.name(), std::nullopt, 2.0, ent, rhs, k, tol);
  c.diagnostics = {{"C_w", cw}, {"mass", h.B}, {"energy", h.A}, {"closed_form_gaussian", std::log(cw) / cw - 0.5 * n_alpha / cw}};
  return c;
}

LsiEquivalence check_lsi_equivalence(const Weight& w, const ScalarField& F, const RuleTarget& target,
                                     const Tolerance& tol) {
  require_log_concave_homogeneous(w);
  require_admissible_field(w, F);
  const int n = w.dim();
  const double n_alpha = n + *w.degree();
  Measure mu = Measure::gaussian(w, 1.0, target);
  Measure nu = Measure::lebesgue(w, target);
  const double cw = mu.normalization();
  const double log_cw = std::log(cw);
  ScalarField h = fields::gaussian(n, std::sqrt(cw), std::sqrt(2.0));
  ScalarField fh = fields::product(F, h);
  // Entropies are not smooth where f vanishes. The entropy identity holds
  // pointwise, so both entropies and the log h term paired with them go on the
  // nodes of mu: |f| <= C e^{-|x|^2/4} and the polynomial class are valid
  // (loose) envelopes that select exactly those nodes. Energies and moments
  // keep the true envelopes, which makes their rules exact.
  ScalarField f(
      n, fh.name(), [fh](const Vec& x) { return fh.value(x); }, [fh](const Vec& x) { return fh.gradient(x); },
      [fh](const Vec& x) { return fh.hessian(x); }, Envelope::gaussian(0.25), fh.parities(), fh.radial());
  ScalarField Fmu(
      n, F.name(), [F](const Vec& x) { return F.value(x); }, [F](const Vec& x) { return F.gradient(x); },
      [F](const Vec& x) { return F.hessian(x); }, Envelope::polynomial(), F.parities(), F.radial());
  auto log_h = [&](const ScalarField& g) {
    return nu
        .integrate(Integrand{[&](const Vec& x) {
                               double v = g.value(x);
                               return v * v * (log_cw - 0.5 * x.squaredNorm());
                             },
                             envelope_power(g.envelope(), 2), abs_parity(g)})
        .value;
  };

  LsiEquivalence out;
  out.entropy_gaussian = entropy_of_square(mu, Fmu).value;
  out.energy_gaussian = dirichlet_energy(mu, F, 2).value;
  out.entropy_euclidean = entropy_of_square(nu, f).value;
  HupMoments m = hup_moments(nu, fh);
  out.A = m.A;
  out.B = m.B;
  out.D = m.D;
  out.log_h_term = log_h(fh);
  const double log_h_shared = log_h(f);

  auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); };
  out.forward_entropy_residual = rel(out.entropy_gaussian, out.entropy_euclidean - log_h_shared);
  out.forward_energy_residual = rel(out.energy_gaussian, m.A - 0.5 * n_alpha * m.B + 0.25 * m.D);

  // Gaussian LSI rewritten in f: Ent_nu - (B log C_w - D/2) <= 2 (A - (n+alpha)/2 B + D/4).
  // Coefficient of D: +1/2 from the entropy side against 2 * 1/4 from the energy side.
  Rational from_entropy(1, 2), from_energy = Rational(2) * Rational(1, 4);
  out.d_coefficient = (from_entropy - from_energy).value();

  out.assembled_bound = 2.0 * m.A - n_alpha * m.B + m.B * log_cw;
  const double s = std::numbers::e / std::pow(cw, 2.0 / n_alpha);
  const double k = c_lsih(cw, n_alpha);
  const double euclid_rhs = 0.5 * n_alpha * m.B * std::log(k * m.A / m.B);
  out.tangent_bound = 0.5 * n_alpha * m.B * (s * k * m.A / m.B - std::log(s) - 1.0);
  out.tangent_step = make_check("lsi_equivalence.tangent", F.name(), std::nullopt, 2.0, euclid_rhs,
                                out.tangent_bound, s, tol);
  out.backward_residual = rel(out.assembled_bound - out.log_h_term, 2.0 * out.energy_gaussian);
  out.gaussian_lsi = make_check("lsi_equivalence.gaussian", F.name(), std::nullopt, 2.0, out.entropy_gaussian,
                                2.0 * out.energy_gaussian, 2.0, tol);
  out.gaussian_lsi.diagnostics = {{"forward_entropy_residual", out.forward_entropy_residual},
                                  {"forward_energy_residual", out.forward_energy_residual},
                                  {"backward_residual", out.backward_residual},
                                  {"d_coefficient", out.d_coefficient},
                                  {"tangent_assembly_gap", std::abs(out.tangent_bound - out.assembled_bound)}};
  return out;
}

std::string to_string(SweepChecker c) {
  switch (c) {
    case SweepChecker::beckner: return "beckner";
    case SweepChecker::poincare: return "poincare";
    case SweepChecker::lsi: return "lsi";
  }
  return "unknown";
}

namespace {

InequalityCheck run_checker(SweepChecker c, const Measure& mu, const ScalarField& f) {
  switch (c) {
    case SweepChecker::beckner: return check_beckner(mu, f, 1.0, 2.0);
    case SweepChecker::poincare: return check_poincare(mu, f, 2.0, PoincareLevel::basic);
    case SweepChecker::lsi: return check_lsi(mu, f, 2.0);
  }
  raise(ErrorCode::parameter, "unknown checker");
}

}  // namespace

SweepTable sharpness_sweep(SweepChecker checker, const Measure& mu, const ScalarField& u,
                           const std::vector<double>& eps) {
  if (eps.size() < 2) raise(ErrorCode::parameter, "a perturbation sweep needs at least two eps values");
  SweepTable t;
  t.checker = to_string(checker);
  t.family = "1+eps*" + u.name();
  for (double e : eps) {
    auto c = run_checker(checker, mu, fields::add_constant(fields::scale_value(u, e), 1.0));
    SweepRow r;
    r.parameter = e;
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.deficit = c.deficit;
    r.ratio = c.rhs != 0 ? c.lhs / c.rhs : 1.0;
    r.scaled_deficit = c.deficit / (e * e);
    t.rows.push_back(r);
  }
  // linear extrapolation to eps = 0 through the two smallest eps
  std::vector<SweepRow> sorted = t.rows;
  std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::abs(a.parameter) < std::abs(b.parameter);
  });
  const auto& a = sorted[0];
  const auto& b = sorted[1];
  if (a.parameter == b.parameter) raise(ErrorCode::parameter, "eps values must differ");
  t.extrapolated_ratio = (b.parameter * a.ratio - a.parameter * b.ratio) / (b.parameter - a.parameter);
  return t;
}

SweepTable extremal_sweep(SweepChecker checker, const Measure& mu,
                          const std::vector<std::pair<double, ScalarField>>& members) {
  SweepTable t;
  t.checker = to_string(checker);
  t.family = "extremal";
  for (const auto& [param, f] : members) {
    auto c = run_checker(checker, mu, f);
    SweepRow r;
    r.parameter = param;
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.deficit = c.deficit;
    r.ratio = c.rhs != 0 ? c.lhs / c.rhs : 1.0;
    r.scaled_deficit = c.deficit;
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace wgauss
