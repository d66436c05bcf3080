/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <doctest.h>

#include <cmath>

#include "wgauss/spectral.hpp"

using namespace wgauss;

namespace {

Vec v1(double a) { return Vec{{a}}; }
Vec v2(double a, double b) { return Vec{{a, b}}; }

Weight flat(int n) { return Weight({Monomial{std::vector<double>(n, 0.0)}}, Cone::full_space(n)); }
Weight half_line(double a) { return Weight({Monomial{{a}}}, Cone::orthant(1, {0})); }
Weight half_plane(double a) { return Weight(partial({Monomial{{a}}}, {1}), Cone::orthant(2, {0})); }
Weight tilt(int n, double s) { return Weight({GaussianTilt{s}}, Cone::full_space(n)); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;  // sentinel: nothing thrown
}

const std::vector<double> kGrid{0, .05, .1, .2, .3, .5, .75, 1, 1.5, 2, 3, 4, 5};

}  // namespace

TEST_CASE("Hermite spectrum of the flat weight") {
  auto sys = build_galerkin(Measure::gaussian(flat(1)), 10);
  CHECK(sys.size() == 11);
  CHECK(sys.orthonormality_residual() <= 1e-12);
  auto r = spectral_gap(sys);
  for (int k = 0; k <= 10; ++k) CHECK(r.eigenvalues[k] == doctest::Approx(k).epsilon(1e-10).scale(1.0));
  CHECK(r.gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(r.unconverged);

  auto sys2 = build_galerkin(Measure::gaussian(flat(2)), 6);
  CHECK(sys2.size() == 28);
  CHECK(sys2.count_up_to(2) == 6);
  auto r2 = spectral_gap(sys2);
  // eigenvalue k has multiplicity k + 1 in two dimensions
  std::vector<int> expect{0, 1, 1, 2, 2, 2, 3, 3, 3, 3};
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(r2.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("gap matches the curvature for tilts and exceeds it on cones") {
  for (double s : {-0.5, 0.0, 0.8}) {
    auto r = spectral_gap(build_galerkin(Measure::gaussian(tilt(2, s)), 6));
    CHECK(r.gap == doctest::Approx(1 + s).epsilon(1e-10));
  }
  // even-only basis on the half-line: generalized Laguerre spectrum 0, 2, 4, ...
  auto sys = build_galerkin(Measure::gaussian(half_line(1.5)), 12);
  CHECK(sys.size() == 7);
  auto r = spectral_gap(sys);
  for (int k = 0; k < 7; ++k) CHECK(r.eigenvalues[k] == doctest::Approx(2 * k).epsilon(1e-9).scale(1.0));
  auto rp = spectral_gap(build_galerkin(Measure::gaussian(half_plane(1.5)), 8));
  CHECK(rp.gap == doctest::Approx(1.0).epsilon(1e-10));
  DunklProduct d;
  d.roots = {v2(1, 0), v2(0, 1)};
  d.multiplicities = {1.0, 0.5};
  auto rd = spectral_gap(build_galerkin(Measure::gaussian(Weight({d}, Cone::orthant(2, {0, 1}))), 8));
  // even in both restricted axes: first excited level is 2
  CHECK(rd.gap == doctest::Approx(2.0).epsilon(1e-9));
  d.roots = {Vec(v2(1, -1) / std::sqrt(2.0)), v2(1, 0)};
  CHECK_THROWS_AS(build_galerkin(Measure::gaussian(Weight({d}, Cone::full_space(2))), 8), Error);
}

TEST_CASE("convergence flag uses the degree two below") {
  auto r = spectral_gap(build_galerkin(Measure::gaussian(flat(1)), 1));
  CHECK(r.unconverged);
  CHECK(std::isinf(r.convergence_delta));
  auto r3 = spectral_gap(build_galerkin(Measure::gaussian(flat(1)), 3));
  CHECK(r3.gap_previous == doctest::Approx(1.0));
  CHECK_FALSE(r3.unconverged);
  CHECK(code_of([] { spectral_gap(build_galerkin(Measure::gaussian(flat(1)), 0)); }) == ErrorCode::parameter);
}

TEST_CASE("Poisson problem") {
  auto sys = build_galerkin(Measure::gaussian(flat(1)), 8);
  auto u = poisson_solve(sys, fields::affine(v1(1.0), 0));
  CHECK(u.residual <= 1e-12);
  CHECK(std::abs(u.mean) <= 1e-12);
  ScalarField uf = sys.expand(u.coef);
  for (double x : {-2.0, 0.3, 1.7}) CHECK(uf.value(v1(x)) == doctest::Approx(x).epsilon(1e-10));
  CHECK(code_of([&] { poisson_solve(sys, fields::constant(1, 1.0)); }) == ErrorCode::mean_zero_violation);
  CHECK(code_of([&] { poisson_solve(sys, fields::affine(v1(1.0), 0.1)); }) == ErrorCode::mean_zero_violation);

  auto sysp = build_galerkin(Measure::gaussian(half_plane(1.5)), 8);
  // L x_2 = -x_2 in the free direction
  auto up = poisson_solve(sysp, fields::affine(v2(0, 1), 0));
  CHECK(up.residual <= 1e-10);
  CHECK(sysp.expand(up.coef).value(v2(0.4, 0.9)) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("duality residual on a quadratic") {
  auto sys = build_galerkin(Measure::gaussian(flat(1)), 8);
  Polynomial q(1, {Monom{1.0, {2}}, Monom{-1.0, {0}}});
  auto c = duality_stability_residual(sys, fields::polynomial(q, "x^2-1"));
  CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(c.rhs == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(c.pass);
  CHECK(c.diagnostics.at("poisson_residual") <= 1e-12);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto sp = build_galerkin(Measure::gaussian(half_plane(1.5)), 6);
    Polynomial p(2, {Monom{standard_normal(seed, 0), {0, 1}}, Monom{standard_normal(seed, 1), {0, 2}},
                     Monom{standard_normal(seed, 2), {2, 1}}});
    ScalarField f = fields::polynomial(p);
    // centre it under the measure
    double mean = 0;
    for (Eigen::Index i = 0; i < sp.nodes().cols(); ++i) mean += sp.node_weights()(i) * f.value(sp.nodes().col(i));
    auto dc = duality_stability_residual(sp, fields::add_constant(f, -mean));
    CAPTURE(seed);
    CHECK(dc.pass);
    CHECK(dc.lhs >= 0);
  }
}

TEST_CASE("heat semigroup") {
  auto sys = build_galerkin(Measure::gaussian(flat(1)), 8);
  auto spec = spectral_gap(sys);
  Polynomial x2(1, {Monom{1.0, {2}}});
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    ScalarField p1 = semigroup_apply(sys, spec, fields::affine(v1(1.0), 0), t);
    ScalarField p2 = semigroup_apply(sys, spec, fields::polynomial(x2), t);
    for (double x : {-1.0, 0.5, 2.0}) {
      CHECK(p1.value(v1(x)) == doctest::Approx(std::exp(-t) * x).epsilon(1e-10).scale(1.0));
      CHECK(p2.value(v1(x)) == doctest::Approx(std::exp(-2 * t) * (x * x - 1) + 1).epsilon(1e-10).scale(1.0));
    }
  }
  CHECK(code_of([&] { semigroup_apply(sys, spec, fields::affine(v1(1.0), 0), -1.0); }) == ErrorCode::parameter);
  // mass conservation
  Eigen::VectorXd a = Eigen::VectorXd::Zero(sys.size());
  a(0) = 2.0;
  a(3) = 1.0;
  Eigen::VectorXd pa = semigroup_apply(sys, spec, a, 0.7);
  CHECK(sys.node_weights().dot(sys.expand_values(pa)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("strong gradient bound residual vanishes as the basis grows") {
  for (double p : {1.0, 1.5}) {
    double prev = 1e300;
    for (int d : {10, 12, 14, 16}) {
      auto sys = build_galerkin(Measure::gaussian(half_plane(1.5)), d);
      auto t = semigroup_decay_check(sys, spectral_gap(sys), fields::exp_axis(2, 0.5, 1), p, 2, kGrid);
      CAPTURE(p);
      CAPTURE(d);
      CHECK(t.gradient_bound_violation < prev);
      prev = t.gradient_bound_violation;
    }
    CHECK(prev <= 1e-8);
  }
}

TEST_CASE("semigroup decay table") {
  auto sys = build_galerkin(Measure::gaussian(half_plane(1.5)), 10);
  auto spec = spectral_gap(sys);
  for (double p : {1.0, 1.5}) {
    auto t = semigroup_decay_check(sys, spec, fields::exp_axis(2, 0.5, 1), p, 2, kGrid);
    CAPTURE(p);
    CHECK(t.pass);
    CHECK(t.shift == 0.0);
    CHECK(t.rows.size() == kGrid.size());
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
      CHECK(t.rows[i].decreasing);
      CHECK(t.rows[i].quotient <= t.rows[i].bound);
    }
    CHECK(t.phi0_vs_norm_q <= 1e-6);
    CHECK(t.rows.back().phi == doctest::Approx(t.phi_limit).epsilon(1e-3));
    CHECK(t.gradient_bound_violation <= 1e-4);
  }
  auto shifted = semigroup_decay_check(sys, spec, fields::affine(v2(0, 1), 0), 1, 2, kGrid);
  CHECK(shifted.shift > 0);
  CHECK(code_of([&] { semigroup_decay_check(sys, spec, fields::affine(v2(0, 1), 0), 1, 2, kGrid, false); }) ==
        ErrorCode::domain);
  CHECK(code_of([&] { semigroup_decay_check(sys, spec, fields::constant(2, 1), 2, 2, kGrid); }) ==
        ErrorCode::parameter);
  CHECK(code_of([&] { semigroup_decay_check(sys, spec, fields::constant(2, 1), 1, 2, {0, 0}); }) ==
        ErrorCode::parameter);
}

TEST_CASE("Galerkin errors") {
  CHECK(code_of([] { build_galerkin(Measure::lebesgue(flat(1)), 4); }) == ErrorCode::contract);
  CHECK(code_of([] { build_galerkin(Measure::gaussian(flat(1)), -1); }) == ErrorCode::parameter);
  // a Monte Carlo rule with fewer nodes than basis functions is rank deficient
  RuleTarget few;
  few.force_monte_carlo = true;
  few.mc_samples = 4;
  few.seed = 3;
  CHECK(code_of([&] { build_galerkin(Measure::gaussian(flat(1), 1.0, few), 6); }) == ErrorCode::degree_too_high);
  Weight wedge({Monomial{{0.0, 0.0}}}, Cone::halfspace(v2(1, 1)));
  CHECK(code_of([&] { build_galerkin(Measure::gaussian(wedge), 4); }) == ErrorCode::unsupported);
}
