/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <doctest.h>

#include <cmath>

#include "wgauss/functionals.hpp"
#include "wgauss/inequality.hpp"

using namespace wgauss;

namespace {

Vec v2(double a, double b) { return Vec{{a, b}}; }

Weight flat(int n) { return Weight({Monomial{std::vector<double>(n, 0.0)}}, Cone::full_space(n)); }
Weight half_plane(double a) { return Weight(partial({Monomial{{a}}}, {1}), Cone::orthant(2, {0})); }
Weight tilt(double s) { return Weight({GaussianTilt{s}}, Cone::full_space(2)); }
// Rank-two Dunkl weight restricted to its positive chamber.
Weight dunkl() {
  DunklProduct d;
  d.roots = {v2(1, 0), v2(0, 1)};
  d.multiplicities = {0.75, 0.5};
  return Weight({d}, Cone::orthant(2, {0, 1}));
}
Weight dunkl_full() {
  DunklProduct d;
  d.roots = {Vec(v2(1, -1) / std::sqrt(2.0)), v2(1, 0), v2(0, 1)};
  d.multiplicities = {0.75, 0.5, 0.5};
  return Weight({d}, Cone::full_space(2));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;  // sentinel: nothing thrown
}

// |deficit| small against the size of the two sides
void check_equality(const InequalityCheck& c, double rel = 1e-10) {
  CAPTURE(c.theorem);
  CAPTURE(c.field);
  CAPTURE(c.lhs);
  CAPTURE(c.rhs);
  CHECK(c.pass);
  CHECK(std::abs(c.deficit) <= rel * (1 + std::abs(c.lhs) + std::abs(c.rhs)));
}

}  // namespace

TEST_CASE("tolerance and verdicts") {
  Tolerance t{1e-6, std::nullopt};
  auto ok = make_check("x", "f", std::nullopt, 2.0, 1.0 + 1e-7, 1.0, 1.0, t);
  CHECK(ok.pass);
  CHECK(ok.deficit == doctest::Approx(-1e-7));
  auto bad = make_check("x", "f", std::nullopt, 2.0, 1.1, 1.0, 1.0, t);
  CHECK_FALSE(bad.pass);
  CHECK(bad.verdict == "fail");
  Tolerance abs_tol{0.0, 0.2};
  CHECK(make_check("x", "f", std::nullopt, 2.0, 1.1, 1.0, 1.0, abs_tol).pass);
  CHECK(code_of([] { make_check("x", "f", std::nullopt, 2.0, NAN, 1.0, 1.0, {}); }) == ErrorCode::evaluation);
}

TEST_CASE("Poincare equality on affine fields") {
  check_equality(check_poincare(Measure::gaussian(flat(2)), fields::affine(v2(2, -1), 3), 2, PoincareLevel::basic));
  check_equality(check_poincare(Measure::gaussian(half_plane(1.5)), fields::affine(v2(0, 3), 1), 2,
                                PoincareLevel::basic));
  // tilted weights: variance 1/(1+s) against energy / (1 + K_w)
  for (double s : {-0.5, 0.0, 0.8}) {
    Measure mu = Measure::gaussian(tilt(s));
    ScalarField f = fields::affine(v2(1, 2), 0);
    check_equality(check_poincare(mu, f, 2, PoincareLevel::basic));
    check_equality(check_poincare(mu, f, 2, PoincareLevel::gradient_stability));
    check_equality(check_poincare(mu, f, 2, PoincareLevel::l2_stability));
  }
  check_equality(check_poincare(Measure::gaussian(flat(2)), fields::constant(2, 4), 2, PoincareLevel::basic));
}

TEST_CASE("stability levels are never below the basic deficit") {
  Measure mu = Measure::gaussian(half_plane(1.5));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScalarField f = fields::poly_gauss(2, seed, 3, 0.25, {0});
    auto basic = check_poincare(mu, f, 2, PoincareLevel::basic);
    auto grad = check_poincare(mu, f, 2, PoincareLevel::gradient_stability);
    auto l2 = check_poincare(mu, f, 2, PoincareLevel::l2_stability);
    CAPTURE(seed);
    CHECK(basic.pass);
    CHECK(grad.pass);
    CHECK(l2.pass);
    // the stability right-hand side is the basic deficit times rho
    CHECK(grad.rhs == doctest::Approx(basic.deficit).epsilon(1e-9).scale(basic.rhs));
    CHECK(l2.rhs == doctest::Approx(grad.rhs).epsilon(1e-12));
    double sum = 0;
    for (int i = 1; i <= 6; ++i) CHECK(l2.diagnostics.count("term" + std::to_string(i) + "_sq") == 1);
    sum = l2.diagnostics.at("projection_sq");
    CHECK(sum >= 0);
  }
}

TEST_CASE("log-Sobolev equality on exponentials") {
  for (double b : {-0.6, 0.3, 1.0}) {
    check_equality(check_lsi(Measure::gaussian(flat(1)), fields::exp_axis(1, b, 0), 2), 1e-9);
    check_equality(check_lsi(Measure::gaussian(half_plane(1.5)), fields::exp_axis(2, b, 1), 2), 1e-9);
    check_equality(check_lsi(Measure::gaussian(tilt(0.5)), fields::exp_axis(2, b, 0), 2), 1e-9);
  }
  check_equality(check_lsi(Measure::gaussian(flat(2)), fields::constant(2, 2), 2));
  check_equality(check_lsi(Measure::gaussian(flat(2)), fields::constant(2, 2), 1.5));
}

TEST_CASE("Beckner interpolates between variance and entropy") {
  Measure mu = Measure::gaussian(half_plane(1.5));
  check_equality(check_beckner(mu, fields::constant(2, 3), 1, 2));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScalarField f = fields::add_constant(fields::gaussian(2, 1.0, 0.5 + 0.1 * seed), 0.1);
    // for a positive field the (1, 2) left side is the variance
    auto b = check_beckner(mu, f, 1, 2);
    auto p = check_poincare(mu, f, 2, PoincareLevel::basic);
    CHECK(b.lhs == doctest::Approx(p.lhs).epsilon(1e-9));
    CHECK(b.rhs == doctest::Approx(p.rhs).epsilon(1e-12));
    auto b15 = check_beckner(mu, f, 1.5, 2);
    CHECK(b15.pass);
  }
  auto low = check_beckner(mu, fields::constant(2, 3), 1, 1.5);
  CHECK(low.informational);
}

TEST_CASE("scale-dependent Poincare") {
  Weight w = half_plane(1.5);
  for (double lambda : {0.5, 1.0, 2.0}) {
    ScalarField f = fields::affine(v2(0, 1), 2);
    auto c = check_scale_poincare(w, f, lambda, ScaleLevel::basic);
    check_equality(c);
    CHECK(c.lhs == doctest::Approx(lambda * lambda).epsilon(1e-12));
    check_equality(check_scale_poincare(w, f, lambda, ScaleLevel::improved));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ScalarField g = fields::poly_gauss(2, seed, 3, 0.25, {0});
      auto basic = check_scale_poincare(w, g, lambda, ScaleLevel::basic);
      auto improved = check_scale_poincare(w, g, lambda, ScaleLevel::improved);
      CHECK(basic.pass);
      CHECK(improved.pass);
      CHECK(improved.lhs >= basic.lhs * (1 - 1e-12));
    }
  }
  CHECK(code_of([] { check_scale_poincare(tilt(0.5), fields::affine(v2(1, 0), 0), 2.0, ScaleLevel::basic); }) ==
        ErrorCode::contract);
  CHECK(code_of([] { check_scale_poincare(tilt(0.5), fields::affine(v2(1, 0), 0), 1.0, ScaleLevel::basic); }) ==
        ErrorCode::io);
  CHECK(code_of([] { check_scale_poincare(flat(2), fields::affine(v2(1, 0), 0), -1.0, ScaleLevel::basic); }) ==
        ErrorCode::parameter);
}

TEST_CASE("admissibility and parameter errors") {
  Measure mu = Measure::gaussian(half_plane(1.5));
  ScalarField normal = fields::affine(v2(1, 0), 0);
  CHECK(code_of([&] { check_poincare(mu, normal, 2, PoincareLevel::basic); }) == ErrorCode::contract);
  CHECK(code_of([&] { check_lsi(mu, normal, 2); }) == ErrorCode::contract);
  CHECK(code_of([&] { require_admissible_field(half_plane(1.5), fields::poly_gauss(2, 1)); }) ==
        ErrorCode::contract);
  CHECK(code_of([&] { require_admissible_field(half_plane(1.5), fields::poly_gauss(2, 1, 3, 0.25, {0})); }) ==
        ErrorCode::io);
  ScalarField ok = fields::affine(v2(0, 1), 0);
  CHECK(code_of([&] { check_beckner(mu, ok, 2, 2); }) == ErrorCode::parameter);
  CHECK(code_of([&] { check_beckner(mu, ok, 0.5, 2); }) == ErrorCode::parameter);
  CHECK(code_of([&] { check_poincare(mu, ok, 1.5, PoincareLevel::l2_stability); }) == ErrorCode::parameter);
  CHECK(code_of([&] { check_poincare(Measure::lebesgue(flat(1)), fields::constant(1, 1), 2, PoincareLevel::basic); }) ==
        ErrorCode::contract);
  CHECK(code_of([&] { check_lsi(mu, fields::constant(2, 0), 2); }) == ErrorCode::degenerate_input);
  CHECK(code_of([&] { check_euclidean_lsi(tilt(0.5), fields::gaussian(2, 1, 1)); }) == ErrorCode::contract);
  CHECK(code_of([&] { check_lsi_equivalence(tilt(0.5), fields::gaussian(2, 1, 1)); }) == ErrorCode::contract);
}

TEST_CASE("weights whose zero set splits the cone are rejected") {
  Weight full = dunkl_full();
  CHECK_FALSE(full.support_convex());
  CHECK(dunkl().support_convex());
  CHECK_FALSE(Weight({Monomial{{1.5, 0.0}}}, Cone::full_space(2)).support_convex());
  CHECK(Weight({Monomial{{1.5, 0.0}}}, Cone::orthant(2, {0})).support_convex());
  CHECK(Weight({Radial{1.0}}, Cone::full_space(2)).support_convex());
  ScalarField g = fields::gaussian(2, 1, 1);
  CHECK(code_of([&] { check_poincare(Measure::gaussian(full), g, 2, PoincareLevel::basic); }) == ErrorCode::contract);
  CHECK(code_of([&] { check_lsi(Measure::gaussian(full), g, 2); }) == ErrorCode::contract);
  CHECK(code_of([&] { check_euclidean_lsi(full, g); }) == ErrorCode::contract);
  // The weight itself stays usable for pointwise work and integration.
  CHECK(full.curvature() == 0.0);
  CHECK(integrate(Measure::gaussian(full), fields::constant(2, 1)).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Euclidean log-Sobolev is sharp on Gaussians") {
  for (Weight w : {flat(2), half_plane(1.5), dunkl()})
    for (double s : {0.7, 1.0, 1.5}) {
      CAPTURE(w.kind_name());
      CAPTURE(s);
      check_equality(check_euclidean_lsi(w, fields::gaussian(2, 1.7, s)), 1e-9);
    }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto c = check_euclidean_lsi(half_plane(1.5), fields::poly_gauss(2, seed, 3, 0.5, {0}));
    CAPTURE(seed);
    CHECK(c.pass);
  }
}

TEST_CASE("log-Sobolev equivalence bookkeeping") {
  for (Weight w : {flat(2), half_plane(1.5), dunkl()}) {
    const bool chamber = w.cone().facets().size() == 2;
    std::vector<ScalarField> fs{fields::constant(2, 1.5), fields::gaussian_quarter(2, 2.0)};
    if (!chamber) {
      fs.push_back(fields::affine(v2(0, 1), 2));
      fs.push_back(fields::exp_axis(2, 0.4, 1));
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      fs.push_back(chamber ? fields::poly_gauss(2, seed, 4, 0.25, {0, 1}) : fields::poly_gauss(2, seed, 3, 0.25, {0}));
    for (const auto& F : fs) {
      CAPTURE(w.kind_name());
      CAPTURE(F.name());
      LsiEquivalence e = check_lsi_equivalence(w, F);
      CHECK(e.forward_entropy_residual <= 1e-7);
      CHECK(e.forward_energy_residual <= 1e-9);
      CHECK(e.backward_residual <= 1e-7);
      CHECK(e.d_coefficient == 0.0);
      CHECK(e.tangent_step.pass);
      CHECK(e.gaussian_lsi.pass);
      CHECK(std::abs(e.tangent_bound - e.assembled_bound) <= 1e-10 * (1 + std::abs(e.assembled_bound)));
    }
  }
}

TEST_CASE("perturbative sweeps approach the sharp constant") {
  Measure mu = Measure::gaussian(half_plane(1.5));
  ScalarField u = fields::affine(v2(0, 1), 0);
  auto p = sharpness_sweep(SweepChecker::poincare, mu, u, {0.4, 0.2, 0.1, 0.05});
  REQUIRE(p.rows.size() == 4);
  for (const auto& r : p.rows) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(*p.extrapolated_ratio == doctest::Approx(1.0).epsilon(1e-10));
  auto l = sharpness_sweep(SweepChecker::lsi, mu, u, {0.1, 0.05, 0.025});
  CHECK(*l.extrapolated_ratio == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& r : l.rows) CHECK(r.ratio <= 1.0 + 1e-12);
  auto b = sharpness_sweep(SweepChecker::beckner, mu, u, {0.1, 0.05});
  CHECK(*b.extrapolated_ratio == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(code_of([&] { sharpness_sweep(SweepChecker::lsi, mu, u, {0.1}); }) == ErrorCode::parameter);
  CHECK(code_of([&] { sharpness_sweep(SweepChecker::lsi, mu, u, {0.1, 0.1}); }) == ErrorCode::parameter);

  std::vector<std::pair<double, ScalarField>> members;
  for (double b2 : {0.1, 0.5, 1.0}) members.emplace_back(b2, fields::exp_axis(2, b2, 1));
  auto ex = extremal_sweep(SweepChecker::lsi, mu, members);
  for (const auto& r : ex.rows) CHECK(std::abs(r.deficit) <= 1e-9 * (1 + r.rhs));
  CHECK(to_string(SweepChecker::beckner) == "beckner");
}
