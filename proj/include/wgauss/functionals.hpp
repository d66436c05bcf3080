/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <string>

#include "wgauss/quadrature.hpp"

namespace wgauss {

struct FunctionalValue {
  std::string name;
  double value = 0.0;
  std::string measure;
  double error = 0.0;
};

// Relative accuracy claimed for tensor-rule integrals.
inline constexpr double kDeclaredIntegrationTolerance = 1e-8;

std::string describe(const Measure& m);

FunctionalValue lq_norm(const Measure& m, const ScalarField& f, double q);
FunctionalValue variance(const Measure& m, const ScalarField& f);
// Ent(g) for a nonnegative field g, with 0 log 0 = 0.
FunctionalValue entropy(const Measure& m, const ScalarField& g);
// Ent(f^2)
FunctionalValue entropy_of_square(const Measure& m, const ScalarField& f);
// integral of |grad f|^q
FunctionalValue dirichlet_energy(const Measure& m, const ScalarField& f, double q);

// Weighted-Lebesgue moments used by the uncertainty principle:
//   A = int |grad f|^2 w, B = int f^2 w, D = int f^2 |x|^2 w.
struct HupMoments {
  double A = 0.0, B = 0.0, D = 0.0;
};
HupMoments hup_moments(const Measure& nu, const ScalarField& f);

double optimal_scale(const Measure& nu, const ScalarField& f);

struct HupDeficit {
  double delta = 0.0;
  double identity_residual = 0.0;
  double lambda_star = 0.0;
  double identity_value = 0.0;
  HupMoments moments;
};
HupDeficit hup_deficit(const Measure& nu, const ScalarField& f);

// Parity of |f|^q and of |grad f|^q given the parity of f.
std::vector<Sym> abs_parity(const ScalarField& f);

}  // namespace wgauss
