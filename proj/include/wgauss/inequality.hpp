/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wgauss/functionals.hpp"

namespace wgauss {

struct Tolerance {
  double relative = 1e-7;
  std::optional<double> absolute;
  double resolve(double lhs, double rhs) const;
};

// lhs <= rhs is the asserted direction; deficit = rhs - lhs.
struct InequalityCheck {
  std::string theorem;
  std::string field;
  std::optional<double> p, q;
  double lhs = 0.0, rhs = 0.0, constant = 0.0, deficit = 0.0, tolerance = 0.0;
  bool pass = false;
  bool informational = false;
  std::string verdict;
  std::map<std::string, double> diagnostics;
};

InequalityCheck make_check(std::string theorem, const std::string& field, std::optional<double> p,
                           std::optional<double> q, double lhs, double rhs, double constant, const Tolerance& tol);

enum class PoincareLevel { basic, gradient_stability, l2_stability };
enum class ScaleLevel { basic, improved };

// Raises contract when f may violate the Neumann condition on the cone.
void require_admissible_field(const Weight& w, const ScalarField& f);

InequalityCheck check_beckner(const Measure& mu, const ScalarField& f, double p, double q, const Tolerance& tol = {});
InequalityCheck check_poincare(const Measure& mu, const ScalarField& f, double q, PoincareLevel level,
                               const Tolerance& tol = {});
InequalityCheck check_scale_poincare(const Weight& w, const ScalarField& f, double lambda, ScaleLevel level,
                                     const RuleTarget& target = {}, const Tolerance& tol = {});
InequalityCheck check_lsi(const Measure& mu, const ScalarField& f, double q, const Tolerance& tol = {});
InequalityCheck check_euclidean_lsi(const Weight& w, const ScalarField& f, const RuleTarget& target = {},
                                    const Tolerance& tol = {});

// Bookkeeping between the Gaussian and the Euclidean log-Sobolev forms under
// f = F h with h = sqrt(C_w) exp(-|x|^2/4).
struct LsiEquivalence {
  double entropy_gaussian = 0.0;     // Ent_mu(F^2)
  double entropy_euclidean = 0.0;    // Ent_nu(f^2)
  double log_h_term = 0.0;           // int f^2 log h^2 dnu
  double energy_gaussian = 0.0;      // int |grad F|^2 dmu
  double A = 0.0, B = 0.0, D = 0.0;  // int |grad f|^2, f^2, |x|^2 f^2 against nu
  double forward_entropy_residual = 0.0;
  double forward_energy_residual = 0.0;
  double d_coefficient = 0.0;        // exact coefficient of D after assembly
  double tangent_bound = 0.0;        // Euclidean rhs relaxed by log t <= s t - log s - 1
  double assembled_bound = 0.0;      // 2A - (n+alpha) B + B log C_w
  double backward_residual = 0.0;
  InequalityCheck gaussian_lsi;      // Ent_mu(F^2) <= 2 int |grad F|^2 dmu
  InequalityCheck tangent_step;      // Euclidean rhs <= tangent bound
};
LsiEquivalence check_lsi_equivalence(const Weight& w, const ScalarField& F, const RuleTarget& target = {},
                                     const Tolerance& tol = {});

enum class SweepChecker { beckner, poincare, lsi };

struct SweepRow {
  double parameter = 0.0;
  double lhs = 0.0, rhs = 0.0, deficit = 0.0, ratio = 0.0;
  double scaled_deficit = 0.0;  // deficit / eps^2 for perturbations
};

struct SweepTable {
  std::string checker;
  std::string family;
  std::vector<SweepRow> rows;
  std::optional<double> extrapolated_ratio;
};

// f = 1 + eps u for each eps
SweepTable sharpness_sweep(SweepChecker checker, const Measure& mu, const ScalarField& u,
                           const std::vector<double>& eps);
// absolute deficits over a list of (parameter, member)
SweepTable extremal_sweep(SweepChecker checker, const Measure& mu,
                          const std::vector<std::pair<double, ScalarField>>& members);

std::string to_string(SweepChecker c);

}  // namespace wgauss
