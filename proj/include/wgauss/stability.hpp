/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <string>

#include "wgauss/inequality.hpp"

namespace wgauss {

// c exp(-|x|^2/(2 lambda^2))  or  (c + d.x) exp(-|x|^2/(2 lambda^2))
enum class GaussianFamily { hupw, affine_gaussian };
std::string to_string(GaussianFamily f);

struct FamilyFit {
  GaussianFamily family = GaussianFamily::hupw;
  double distance_sq = 0.0;
  double distance = 0.0;
  double norm_sq = 0.0;  // int f^2 w dx
  double c = 0.0;
  Vec d;
  double lambda = 1.0;
  bool degenerate = false;  // f orthogonal to the family at every scale
  int evaluations = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // final log-lambda bracket
};

// Squared L^2(w dx) residual after the closed-form fit of c (or c, d) at a
// fixed lambda. Needs a homogeneous weight and a Gaussian-decay field.
double family_residual_sq(const Weight& w, const ScalarField& f, GaussianFamily family, double lambda,
                          const RuleTarget& target = {});

// Infimum over lambda in [1e-2, 1e2]: 16-point log-spaced scan, then golden
// section in log lambda down to 1e-10.
FamilyFit distance_to_family(const Weight& w, const ScalarField& f, GaussianFamily family,
                             const RuleTarget& target = {});

struct StabilityReport {
  std::string field;
  double delta = 0.0;
  double lambda_star = 0.0;
  double curvature = 0.0;
  FamilyFit basic;     // against the Gaussian family
  FamilyFit improved;  // against the affine-Gaussian family
  InequalityCheck basic_check;     // (1+K) d^2 <= delta
  InequalityCheck improved_check;  // ((1+K)/2) d~^2 <= delta - (1+K) d^2
};

StabilityReport check_hup_stability(const Weight& w, const ScalarField& f, const RuleTarget& target = {},
                                    const Tolerance& tol = {});

}  // namespace wgauss
