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

const double kSqrtPi = std::sqrt(M_PI);

Vec v2(double a, double b) { return Vec{{a, b}}; }

Weight flat(int n) { return Weight({Monomial{std::vector<double>(n, 0.0)}}, Cone::full_space(n)); }

// |x_1|^a on the half-plane x_1 > 0, flat in x_2
Weight half_plane(double a) { return Weight(partial({Monomial{{a}}}, {1}), Cone::orthant(2, {0})); }

}  // namespace

TEST_CASE("variance and norms against closed forms") {
  Measure mu = Measure::gaussian(flat(2));
  CHECK(variance(mu, fields::affine(v2(2, -1), 4)).value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(variance(mu, fields::constant(2, 3)).value == doctest::Approx(0.0).scale(1.0));
  CHECK(lq_norm(mu, fields::constant(2, -3), 1.5).value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lq_norm(Measure::gaussian(flat(1)), fields::affine(Vec{{1.0}}, 0), 1).value ==
        doctest::Approx(std::sqrt(2 / M_PI)).epsilon(1e-6));
  CHECK(lq_norm(mu, fields::affine(v2(0, 1), 0), 2).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dirichlet_energy(mu, fields::affine(v2(3, 4), 0), 1).value == doctest::Approx(5.0).epsilon(1e-12));
  // Var under the scale-lambda Gaussian of x_1 is lambda^2
  Measure mu2 = Measure::gaussian(flat(2), 1.7);
  CHECK(variance(mu2, fields::affine(v2(1, 0), 0)).value == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
}

TEST_CASE("entropy of exponentials") {
  Measure mu = Measure::gaussian(flat(1));
  for (double b : {-0.7, 0.1, 0.5, 1.0}) {
    CAPTURE(b);
    double expect = 2 * b * b * std::exp(2 * b * b);
    CHECK(entropy_of_square(mu, fields::exp_axis(1, b, 0)).value == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(entropy(mu, fields::constant(1, 2.5)).value == doctest::Approx(0.0).scale(1.0));
  CHECK(entropy(mu, fields::constant(1, 0.0)).value == 0.0);
}

TEST_CASE("functional errors") {
  Measure mu = Measure::gaussian(flat(1));
  Measure nu = Measure::lebesgue(flat(1));
  CHECK_THROWS_AS(entropy(mu, fields::affine(Vec{{1.0}}, 0.5)), Error);
  try {
    entropy(mu, fields::affine(Vec{{1.0}}, 0.5));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io;  // sentinel: nothing thrown
  };
  CHECK(code_of([&] { variance(nu, fields::constant(1, 1)); }) == ErrorCode::contract);
  CHECK(code_of([&] { lq_norm(mu, fields::constant(1, 1), 0.5); }) == ErrorCode::parameter);
  CHECK(code_of([&] { hup_moments(mu, fields::gaussian(1, 1, 1)); }) == ErrorCode::contract);
  CHECK(code_of([&] { hup_moments(nu, fields::affine(Vec{{1.0}}, 0)); }) == ErrorCode::decay_contract);
  CHECK(code_of([&] { lq_norm(nu, fields::constant(1, 1), 2); }) == ErrorCode::decay_contract);
  Weight tilt({GaussianTilt{0.5}}, Cone::full_space(1));
  CHECK(code_of([&] { hup_deficit(Measure::lebesgue(tilt), fields::gaussian(1, 1, 1)); }) == ErrorCode::contract);
  CHECK(code_of([&] { hup_deficit(nu, fields::constant(1, 0.0)); }) != ErrorCode::io);
}

TEST_CASE("uncertainty deficit vanishes on centred Gaussians") {
  for (double a : {0.0, 1.0, 1.5, 3.0})
    for (double s : {0.6, 1.0, 2.0}) {
      CAPTURE(a);
      CAPTURE(s);
      Measure nu = Measure::lebesgue(half_plane(a));
      HupDeficit d = hup_deficit(nu, fields::gaussian(2, 1.3, s));
      CHECK(std::abs(d.delta) <= 1e-10 * d.moments.B);
      CHECK(d.lambda_star == doctest::Approx(s).epsilon(1e-10));
      CHECK(d.identity_residual <= 1e-10 * d.moments.B);
    }
}

TEST_CASE("uncertainty moments of the odd witness") {
  Measure nu = Measure::lebesgue(half_plane(1.0));
  HupDeficit d = hup_deficit(nu, fields::hermite_witness(2, 1));
  CHECK(d.moments.A == doctest::Approx(5 * kSqrtPi / 8).epsilon(1e-12));
  CHECK(d.moments.D == doctest::Approx(5 * kSqrtPi / 8).epsilon(1e-12));
  CHECK(d.moments.B == doctest::Approx(kSqrtPi / 4).epsilon(1e-12));
  CHECK(d.delta == doctest::Approx(kSqrtPi / 4).epsilon(1e-12));
  CHECK(d.lambda_star == doctest::Approx(1.0).epsilon(1e-12));

  Measure nu15 = Measure::lebesgue(half_plane(1.5));
  HupDeficit e = hup_deficit(nu15, fields::hermite_witness(2, 1));
  CHECK(e.delta == doctest::Approx(std::tgamma(1.25) * kSqrtPi / 4).epsilon(1e-12));
  CHECK(e.identity_residual <= 1e-12);
}

TEST_CASE("uncertainty deficit properties on random fields") {
  for (double a : {0.0, 1.5}) {
    Measure nu = Measure::lebesgue(half_plane(a));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CAPTURE(seed);
      ScalarField f = fields::poly_gauss(2, seed, 3, 0.5, {0});
      HupDeficit d = hup_deficit(nu, f);
      // nonnegative, equal to the completed-square identity, scale invariant
      CHECK(d.delta >= -1e-10 * d.moments.B);
      CHECK(d.identity_residual <= 1e-9 * (d.moments.B + std::abs(d.delta)));
      HupDeficit ds = hup_deficit(nu, fields::scale_argument(f, 1.4));
      CHECK(ds.delta / ds.moments.B == doctest::Approx(d.delta / d.moments.B).epsilon(1e-8));
      CHECK(ds.lambda_star == doctest::Approx(1.4 * d.lambda_star).epsilon(1e-8));
      CHECK(optimal_scale(nu, f) == doctest::Approx(d.lambda_star));
    }
  }
}

TEST_CASE("descriptions name the measure") {
  CHECK(describe(Measure::gaussian(flat(1))).find("gauss") != std::string::npos);
  CHECK(describe(Measure::gaussian(flat(1))) != describe(Measure::lebesgue(flat(1))));
}
