/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <vector>

namespace wgauss {

inline constexpr int kMaxRuleOrder = 200;

enum class Support1D { half_line, full_line };

// Three-term recurrence p_{k+1} = (t - alpha_k) p_k - beta_k p_{k-1} with
// beta_0 the total mass.
struct Recurrence {
  std::vector<long double> alpha;
  std::vector<long double> beta;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Moment k of |t|^a exp(-t^2/2) on the half or full line.
double generalized_hermite_moment(double a, Support1D support, int k);

// Recurrence for |t|^a exp(-t^2/2), from its moments by the Chebyshev
// algorithm in MPFR arithmetic sized to the order.
Recurrence generalized_hermite_recurrence(double a, Support1D support, int order);

// Gauss rule with `order` nodes for |t|^a exp(-t^2/2); cached.
const Rule1D& generalized_hermite_rule(double a, Support1D support, int order);

// Gauss-Legendre on [lo, hi].
Rule1D gauss_legendre(int order, double lo, double hi);

// Nodes and weights from a recurrence (Golub-Welsch eigenvalues, weights from
// the Christoffel function so tiny tail weights keep full relative accuracy).
Rule1D gauss_rule_from_recurrence(const Recurrence& rec, int order);

}  // namespace wgauss
