/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "wgauss/field.hpp"
#include "wgauss/weight.hpp"

namespace wgauss {

// L f = lap f - x.grad f + grad log w . grad f
double apply_generator(const Weight& w, const ScalarField& f, const Vec& x);
double carre_du_champ(const ScalarField& f, const ScalarField& g, const Vec& x);
// |Hess f|_F^2 + |grad f|^2 - Hess log w (grad f, grad f)
double gamma2(const Weight& w, const ScalarField& f, const Vec& x);
// min over the sample of gamma2(f) - (1 + K_w) Gamma(f, f)
double cd_margin(const Weight& w, const ScalarField& f, const std::vector<Vec>& sample);
// |1/2 L Gamma(f,f) - Gamma(f, L f) - gamma2(f)| with the outer derivatives by
// centred differences of step h (default 1e-4 (1 + |x|)).
double bochner_residual(const Weight& w, const ScalarField& f, const Vec& x, std::optional<double> h = std::nullopt);
double neumann_residual(const ScalarField& f, const Cone& cone, const std::vector<Vec>& boundary);

// Interior points from a folded Gaussian of standard deviation `spread`,
// kept at least `margin` away from facets and from the singular set of w.
std::vector<Vec> interior_sample(const Weight& w, std::size_t count, std::uint64_t seed, double spread = 1.5,
                                 double margin = 1e-3);

}  // namespace wgauss
