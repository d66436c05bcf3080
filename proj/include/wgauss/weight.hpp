/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wgauss/cone.hpp"
#include "wgauss/types.hpp"

namespace wgauss {

struct WeightSpec;

// w(x) = prod |x_i|^{a_i}
struct Monomial {
  std::vector<double> exponents;
};

// w(x) = |x|^alpha
struct Radial {
  double alpha = 0.0;
};

// w(x) = prod_beta |<beta, x>|^{2 k_beta}
struct DunklProduct {
  std::vector<Vec> roots;
  std::vector<double> multiplicities;
};

// w(x) = exp(-s |x|^2 / 2)
struct GaussianTilt {
  double s = 0.0;
};

// Inner weight on the non-free coordinates (in increasing order); constant in
// every free coordinate.
struct PartialProduct {
  std::shared_ptr<const WeightSpec> inner;
  std::vector<int> free_coords;
};

struct Custom {
  std::string name = "custom";
  std::function<double(const Vec&)> log_weight;
  std::function<Vec(const Vec&)> grad_log;
  std::function<Mat(const Vec&)> hess_log;
  std::optional<double> degree;
  // Standard deviation of the Gaussian proposal used for Monte Carlo rules.
  // Absent means the weight cannot be sampled.
  std::optional<double> sampler_scale;
};

struct WeightSpec {
  std::variant<Monomial, Radial, DunklProduct, GaussianTilt, PartialProduct, Custom> v;
};

struct CurvatureSampler {
  std::size_t points = 100000;
  double radius = 10.0;
  std::size_t descent_starts = 10;
};

struct CurvatureCertificate {
  bool analytic = true;
  std::size_t num_points = 0;
  double min_eigenvalue_found = 0.0;
  Vec minimizer;
};

struct CurvatureBound {
  double value = 0.0;
  CurvatureCertificate certificate;
};

class Weight {
 public:
  Weight(WeightSpec spec, Cone cone, CurvatureSampler sampler = {});

  const WeightSpec& spec() const { return impl_->spec; }
  const Cone& cone() const { return impl_->cone; }
  int dim() const { return impl_->cone.dim(); }
  const std::string& kind_name() const { return impl_->kind; }

  std::optional<double> degree() const { return impl_->degree; }
  bool homogeneous() const { return impl_->degree.has_value(); }
  // Known log-concave from the formula; false when unknown.
  bool log_concave() const { return impl_->log_concave; }

  bool admissible() const { return impl_->curvature.has_value(); }
  const std::string& inadmissible_reason() const { return impl_->reason; }
  // K_w; raises inadmissible-weight when the curvature condition fails.
  double curvature() const;
  const CurvatureCertificate& certificate() const;

  double value(const Vec& x) const;
  double log_value(const Vec& x) const;
  Vec grad_log(const Vec& x) const;
  Mat hess_log(const Vec& x) const;

  // True when w(x) = w(x with x_k negated) and the cone is symmetric in x_k.
  bool reflection_symmetric(int axis) const { return impl_->symmetric[axis]; }
  // Coordinates the weight does not depend on.
  const std::vector<int>& free_axes() const { return impl_->free_axes; }

  // False when a zero hyperplane of w crosses the cone interior, so {w > 0}
  // splits into several pieces there.
  bool support_convex() const { return impl_->support_convex; }

  bool sampler_available() const { return impl_->samplable; }
  double sampler_scale() const { return impl_->sampler_scale; }

 private:
  struct Impl {
    WeightSpec spec;
    Cone cone;
    std::string kind;
    std::optional<double> degree;
    bool log_concave = false;
    std::optional<double> curvature;
    CurvatureCertificate certificate;
    std::string reason;
    std::vector<bool> symmetric;
    std::vector<int> free_axes;
    bool samplable = true;
    bool support_convex = true;
    double sampler_scale = 1.0;
  };
  std::shared_ptr<const Impl> impl_;
};

// Raises contract when {w > 0} is not convex inside the cone.
void require_convex_support(const Weight& w);

double eval_weight(const Weight& w, const Vec& x);
Vec grad_log_weight(const Weight& w, const Vec& x);
Mat hess_log_weight(const Weight& w, const Vec& x);
CurvatureBound curvature_lower_bound(const Weight& w, const CurvatureSampler& sampler = {});
double euler_residual(const Weight& w, const Vec& x);
Vec boundary_normal(const Cone& cone, const Vec& x);

// Spec-level helpers, usable before a Weight is built.
int spec_dim(const WeightSpec& spec);
std::optional<double> spec_degree(const WeightSpec& spec);
std::string spec_kind(const WeightSpec& spec);
// w(x) from the formula alone, no cone check.
double spec_value(const WeightSpec& spec, const Vec& x);
WeightSpec partial(WeightSpec inner, std::vector<int> free_coords);

}  // namespace wgauss
