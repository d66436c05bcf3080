/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <doctest.h>

#include <cmath>

#include "wgauss/weight.hpp"

using namespace wgauss;

namespace {

Vec v2(double a, double b) { return Vec{{a, b}}; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::domain;
}

// Random interior points of the weight's cone, off the singular sets.
std::vector<Vec> interior_points(const Weight& w, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  std::uint64_t i = 0;
  while (static_cast<int>(out.size()) < count) {
    Vec x(w.dim());
    for (int k = 0; k < w.dim(); ++k) x(k) = 2.0 * standard_normal(seed, i++);
    x = w.cone().has_boundary() ? w.cone().fold(x) : x;
    if (!w.cone().interior(x)) continue;
    if (std::isfinite(w.log_value(x)) && w.value(x) > 1e-8) out.push_back(x);
  }
  return out;
}

Weight dunkl_a1() {
  DunklProduct d;
  d.roots = {v2(1, -1) / std::sqrt(2.0), v2(1, 0)};
  d.multiplicities = {0.75, 0.5};
  return Weight({d}, Cone::full_space(2));
}

std::vector<Weight> homogeneous_weights() {
  return {Weight({Monomial{{1.0, 2.0}}}, Cone::orthant(2, {0, 1})),
          Weight({Monomial{{1.5, 0.0}}}, Cone::orthant(2, {0})),
          Weight({Radial{1.0}}, Cone::full_space(2)),
          Weight({Radial{1.5}}, Cone::full_space(3)),
          dunkl_a1(),
          Weight(partial({Monomial{{1.5}}}, {1}), Cone::orthant(2, {0}))};
}

}  // namespace

TEST_CASE("cone boundary normals") {
  Cone q = Cone::orthant(2, {0, 1});
  Vec n = q.boundary_normal(v2(0, 1));
  CHECK(n(0) == doctest::Approx(-1.0));
  CHECK(n(1) == doctest::Approx(0.0));
  Cone h = Cone::halfspace(v2(1, 0));
  Vec m = h.boundary_normal(v2(0, 3));
  CHECK(m(0) == doctest::Approx(-1.0));
  CHECK(m.dot(v2(0, 3)) == doctest::Approx(0.0));
  CHECK(code_of([&] { q.boundary_normal(v2(0, 0)); }) == ErrorCode::ambiguous_normal);
  CHECK(code_of([&] { Cone::full_space(2).boundary_normal(v2(0, 0)); }) == ErrorCode::no_boundary);
  CHECK(code_of([&] { q.boundary_normal(v2(1, 1)); }) == ErrorCode::domain);
}

TEST_CASE("cone membership, folding and mass fraction") {
  Cone q = Cone::orthant(3, {0, 2});
  CHECK(q.contains(Vec{{0.0, -1.0, 2.0}}));
  CHECK_FALSE(q.interior(Vec{{0.0, -1.0, 2.0}}));
  Vec f = q.fold(Vec{{-1.0, -2.0, -3.0}});
  CHECK(f(0) == 1.0);
  CHECK(f(1) == -2.0);
  CHECK(f(2) == 3.0);
  CHECK(q.gaussian_mass_fraction() == doctest::Approx(0.25));
  auto signs = q.axis_signs();
  REQUIRE(signs);
  CHECK((*signs)[0] == 1);
  CHECK((*signs)[1] == 0);
  CHECK_FALSE(Cone::halfspace(v2(1, 1)).axis_signs());
  for (const Vec& b : q.boundary_sample(50, 3)) {
    CHECK(q.contains(b));
    CHECK_FALSE(q.interior(b));
  }
}

TEST_CASE("weight evaluation and analytic curvature") {
  Weight m({Monomial{{1.0, 2.0}}}, Cone::orthant(2, {0, 1}));
  CHECK(m.value(v2(2, 3)) == doctest::Approx(18.0));
  CHECK(m.degree().value() == 3.0);
  CHECK(m.curvature() == 0.0);
  CHECK(m.certificate().analytic);

  Weight r1({Radial{2.5}}, Cone::full_space(1));
  CHECK(r1.curvature() == 0.0);
  Weight r2({Radial{1.0}}, Cone::full_space(2));
  CHECK_FALSE(r2.admissible());
  CHECK(code_of([&] { r2.curvature(); }) == ErrorCode::inadmissible_weight);
  Weight r0({Radial{0.0}}, Cone::full_space(3));
  CHECK(r0.curvature() == 0.0);

  Weight tilt({GaussianTilt{-0.5}}, Cone::full_space(2));
  CHECK(tilt.curvature() == -0.5);
  CHECK_FALSE(tilt.homogeneous());
  CHECK(code_of([&] { Weight({GaussianTilt{-1.0}}, Cone::full_space(2)); }) == ErrorCode::inadmissible_weight);
  CHECK(dunkl_a1().curvature() == 0.0);
  CHECK(dunkl_a1().degree().value() == doctest::Approx(2.5));
}

TEST_CASE("partial product curvature follows its inner weight when that is nonpositive") {
  Weight inner({Monomial{{1.5}}}, Cone::orthant(1, {0}));
  Weight p(partial({Monomial{{1.5}}}, {1}), Cone::orthant(2, {0}));
  CHECK(p.curvature() == inner.curvature());
  CHECK(p.free_axes() == std::vector<int>{1});
  CHECK(p.reflection_symmetric(1));
  CHECK_FALSE(p.reflection_symmetric(0));
  Weight ptilt(partial({GaussianTilt{-0.25}}, {0}), Cone::full_space(2));
  CHECK(ptilt.curvature() == -0.25);
  Mat h = ptilt.hess_log(v2(0.3, -0.7));
  CHECK(h(0, 0) == 0.0);
  CHECK(h(0, 1) == 0.0);
  CHECK(h(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("singularities and domain errors") {
  Weight m({Monomial{{1.0, 0.0}}}, Cone::orthant(2, {0}));
  CHECK(code_of([&] { m.grad_log(v2(0, 1)); }) == ErrorCode::singularity);
  CHECK(code_of([&] { m.grad_log(v2(-1, 1)); }) == ErrorCode::domain);
  CHECK(code_of([&] { dunkl_a1().hess_log(v2(1, 1)); }) == ErrorCode::singularity);
  CHECK(code_of([&] { Weight({Monomial{{1.0}}}, Cone::full_space(2)); }) == ErrorCode::parameter);
}

TEST_CASE("euler identity holds for homogeneous weights") {
  for (const Weight& w : homogeneous_weights()) {
    CAPTURE(w.kind_name());
    for (const Vec& x : interior_points(w, 1000, 17)) {
      CHECK(std::abs(euler_residual(w, x)) <= 1e-10 * w.value(x) * (1.0 + x.norm()));
    }
  }
  Weight r({Radial{1.5}}, Cone::full_space(2));
  CHECK(euler_residual(r, v2(0.3, -2.0)) == doctest::Approx(0.0).epsilon(1e-12));
  Weight tilt({GaussianTilt{0.5}}, Cone::full_space(2));
  CHECK(code_of([&] { euler_residual(tilt, v2(1, 1)); }) == ErrorCode::not_homogeneous);
}

TEST_CASE("log-derivatives match finite differences") {
  for (const Weight& w : homogeneous_weights()) {
    CAPTURE(w.kind_name());
    for (const Vec& x : interior_points(w, 50, 5)) {
      const double h = 1e-5;
      Vec g = w.grad_log(x);
      Mat H = w.hess_log(x);
      for (int k = 0; k < w.dim(); ++k) {
        Vec e = Vec::Zero(w.dim());
        e(k) = h;
        double fd = (w.log_value(x + e) - w.log_value(x - e)) / (2 * h);
        CHECK(g(k) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        Vec gd = (w.grad_log(x + e) - w.grad_log(x - e)) / (2 * h);
        for (int j = 0; j < w.dim(); ++j) CHECK(H(j, k) == doctest::Approx(gd(j)).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("monomial and radial weights are log-concave at sampled points") {
  std::vector<Weight> ws{Weight({Monomial{{1.0, 2.0}}}, Cone::orthant(2, {0, 1})),
                         Weight({Monomial{{0.5, 3.0, 1.0}}}, Cone::orthant(3, {0, 1, 2})),
                         Weight({Radial{2.0}}, Cone::full_space(1))};
  for (const Weight& w : ws)
    for (const Vec& x : interior_points(w, 300, 9)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-w.hess_log(x));
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("Gaussian tilt has constant log-Hessian") {
  Weight tilt({GaussianTilt{0.7}}, Cone::full_space(3));
  double worst = 0;
  for (const Vec& x : interior_points(tilt, 100, 4))
    worst = std::max(worst, (tilt.hess_log(x) + 0.7 * Mat::Identity(3, 3)).norm());
  CHECK(worst == 0.0);
}

TEST_CASE("sampled curvature certificate for custom weights") {
  Custom quartic;
  quartic.name = "quartic";
  quartic.log_weight = [](const Vec& x) { return -x.squaredNorm() * x.squaredNorm(); };
  quartic.grad_log = [](const Vec& x) -> Vec { return -4.0 * x.squaredNorm() * x; };
  quartic.hess_log = [](const Vec& x) -> Mat {
    return -4.0 * x.squaredNorm() * Mat::Identity(x.size(), x.size()) - 8.0 * x * x.transpose();
  };
  quartic.sampler_scale = 1.0;
  CurvatureSampler s;
  s.points = 20000;
  Weight w({quartic}, Cone::full_space(2), s);
  CHECK_FALSE(w.certificate().analytic);
  CHECK(w.certificate().num_points == 20000);
  // infimum 0 at the origin; descent gets within round-off
  CHECK(w.curvature() <= 1e-6);
  CHECK(w.curvature() >= -1e-9);

  Custom gauss;
  gauss.log_weight = [](const Vec& x) { return -x.squaredNorm(); };
  gauss.grad_log = [](const Vec& x) -> Vec { return -2.0 * x; };
  gauss.hess_log = [](const Vec& x) -> Mat { return -2.0 * Mat::Identity(x.size(), x.size()); };
  s.points = 2000;
  CHECK(Weight({gauss}, Cone::full_space(2), s).curvature() == doctest::Approx(2.0));

  Custom convex;
  convex.log_weight = [](const Vec& x) { return 0.75 * x.squaredNorm(); };
  convex.grad_log = [](const Vec& x) -> Vec { return 1.5 * x; };
  convex.hess_log = [](const Vec& x) -> Mat { return 1.5 * Mat::Identity(x.size(), x.size()); };
  Weight bad({convex}, Cone::full_space(2), s);
  CHECK_FALSE(bad.admissible());
  CHECK(code_of([&] { bad.curvature(); }) == ErrorCode::inadmissible_weight);
}

TEST_CASE("spec helpers") {
  CHECK(spec_dim({Monomial{{1, 2, 3}}}) == 3);
  CHECK(spec_dim({Radial{1}}) == -1);
  CHECK(spec_degree({Monomial{{1, 2, 3}}}).value() == 6.0);
  CHECK(spec_degree({GaussianTilt{0.0}}).value() == 0.0);
  CHECK_FALSE(spec_degree({GaussianTilt{0.3}}));
  CHECK(spec_dim(partial({Monomial{{1.5}}}, {1})) == 2);
  CHECK(spec_value({Monomial{{1.0, 2.0}}}, v2(-2, 3)) == doctest::Approx(18.0));
}
