/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <doctest.h>

#include <cmath>

#include "wgauss/functionals.hpp"
#include "wgauss/stability.hpp"
#include "oracles.hpp"

using namespace wgauss;

namespace {

const double kSqrtPi = std::sqrt(M_PI);

Vec v2(double a, double b) { return Vec{{a, b}}; }

Weight half_line(double a) { return Weight({Monomial{{a}}}, Cone::orthant(1, {0})); }
Weight half_plane(double a) { return Weight(partial({Monomial{{a}}}, {1}), Cone::orthant(2, {0})); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("members of the Gaussian family are at distance zero") {
  Weight w = half_plane(1.5);
  FamilyFit fit = distance_to_family(w, fields::gaussian(2, 2.0, 2.0), GaussianFamily::hupw);
  CHECK(fit.distance <= 1e-6 * std::sqrt(fit.norm_sq));
  CHECK(fit.c == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.lambda == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_FALSE(fit.degenerate);
  CHECK(family_residual_sq(w, fields::gaussian(2, 2.0, 2.0), GaussianFamily::hupw, 2.0) <= 1e-20 + 1e-13 * fit.norm_sq);

  ScalarField tilted = fields::product(fields::affine(v2(0, 1), 0.5), fields::gaussian(2, 1.0, 1.3));
  FamilyFit af = distance_to_family(w, tilted, GaussianFamily::affine_gaussian);
  CHECK(af.distance <= 1e-6 * std::sqrt(af.norm_sq));
  CHECK(af.lambda == doctest::Approx(1.3).epsilon(1e-6));
  CHECK(af.c == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(af.d(1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(to_string(GaussianFamily::hupw) == "gaussian");
  CHECK(to_string(GaussianFamily::affine_gaussian) == "affine_gaussian");
}

TEST_CASE("odd witness is orthogonal to the radial family") {
  Weight w = half_plane(1.0);
  ScalarField f = fields::hermite_witness(2, 1);
  FamilyFit fit = distance_to_family(w, f, GaussianFamily::hupw);
  CHECK(fit.degenerate);
  CHECK(fit.distance_sq == doctest::Approx(kSqrtPi / 4).epsilon(1e-12));
  CHECK(fit.distance == doctest::Approx(std::sqrt(fit.norm_sq)).epsilon(1e-12));
  FamilyFit af = distance_to_family(w, f, GaussianFamily::affine_gaussian);
  CHECK(af.distance <= 1e-6);
  CHECK(af.lambda == doctest::Approx(1.0).epsilon(1e-6));

  StabilityReport r = check_hup_stability(w, f);
  CHECK(r.delta == doctest::Approx(kSqrtPi / 4).epsilon(1e-12));
  CHECK(r.basic_check.pass);
  // (1+K) d^2 = delta here: the basic bound is attained
  CHECK(r.basic_check.lhs == doctest::Approx(r.basic_check.rhs).epsilon(1e-10));
  CHECK(r.basic_check.theorem == "hup_stability.basic");
  CHECK(r.improved_check.theorem == "hup_stability.improved");
  CHECK(r.improved_check.pass);
}

TEST_CASE("stability bounds on random fields") {
  for (double a : {0.0, 1.5}) {
    Weight w = half_plane(a);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ScalarField f = fields::poly_gauss(2, seed, 3, 0.5, {0});
      StabilityReport r = check_hup_stability(w, f);
      CAPTURE(a);
      CAPTURE(seed);
      CHECK(r.basic_check.pass);
      CHECK(r.improved_check.pass);
      CHECK(r.improved.distance <= r.basic.distance * (1 + 1e-9) + 1e-12);
      CHECK(r.basic_check.lhs == doctest::Approx((1 + r.curvature) * r.basic.distance_sq));
      CHECK(r.improved_check.rhs == doctest::Approx(r.delta - r.basic_check.lhs).scale(r.delta + 1));
      // equivariance under x -> x / s
      StabilityReport rs = check_hup_stability(w, fields::scale_argument(f, 1.6));
      CHECK(rs.basic.distance_sq / rs.basic.norm_sq ==
            doctest::Approx(r.basic.distance_sq / r.basic.norm_sq).epsilon(1e-6).scale(1e-9));
      CHECK(rs.delta / rs.basic.norm_sq == doctest::Approx(r.delta / r.basic.norm_sq).epsilon(1e-8));
    }
  }
}

TEST_CASE("zero deficit forces zero distance") {
  Weight w = half_plane(1.5);
  for (double l : {0.5, 1.0, 3.0}) {
    StabilityReport r = check_hup_stability(w, fields::gaussian(2, 0.7, l));
    CHECK(std::abs(r.delta) <= 1e-10 * r.basic.norm_sq);
    CHECK(r.basic.distance_sq <= 1e-10 * r.basic.norm_sq);
    CHECK(r.lambda_star == doctest::Approx(l).epsilon(1e-8));
    CHECK(r.basic.lambda == doctest::Approx(l).epsilon(1e-5));
  }
}

TEST_CASE("golden section agrees with a brute-force grid") {
  for (double a : {0.0, 1.5, 3.0})
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      ScalarField f = fields::poly_gauss(1, seed, 4, 0.5, {0});
      FamilyFit fit = distance_to_family(half_line(a), f, GaussianFamily::hupw);
      auto ref = oracle::half_line_family_distance(a, [&](double x) { return f.value(Vec{{x}}); });
      CAPTURE(a);
      CAPTURE(seed);
      CHECK(fit.distance_sq == doctest::Approx(ref.value).epsilon(1e-8).scale(fit.norm_sq));
      CHECK(fit.lambda == doctest::Approx(std::exp(ref.log_lambda)).epsilon(1e-6));
    }
}

TEST_CASE("stability errors") {
  Weight tilt({GaussianTilt{0.5}}, Cone::full_space(2));
  CHECK(code_of([&] { check_hup_stability(tilt, fields::gaussian(2, 1, 1)); }) == ErrorCode::contract);
  CHECK(code_of([&] { distance_to_family(tilt, fields::gaussian(2, 1, 1), GaussianFamily::hupw); }) ==
        ErrorCode::contract);
  CHECK(code_of([] { distance_to_family(half_plane(1), fields::affine(v2(0, 1), 0), GaussianFamily::hupw); }) ==
        ErrorCode::decay_contract);
  CHECK(code_of([] { distance_to_family(half_plane(1), fields::scale_value(fields::gaussian(2, 1, 1), 0.0),
                                        GaussianFamily::hupw); }) == ErrorCode::degenerate_input);
  CHECK(code_of([] { family_residual_sq(half_plane(1), fields::gaussian(2, 1, 1), GaussianFamily::hupw, -1); }) ==
        ErrorCode::parameter);
}
