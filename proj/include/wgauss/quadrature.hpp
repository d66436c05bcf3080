/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <vector>

#include "wgauss/field.hpp"
#include "wgauss/weight.hpp"

namespace wgauss {

enum class RuleKind { tensor_generalized_hermite, monte_carlo };

// Integrates g against w(x) exp(-|x|^2 / (2 scale^2)) dx over the cone.
struct QuadratureRule {
  RuleKind kind = RuleKind::tensor_generalized_hermite;
  int dim = 0;
  int order = 0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  Eigen::MatrixXd nodes;  // dim x size
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  Vec node(std::size_t i) const { return nodes.col(static_cast<Eigen::Index>(i)); }
  double total_weight() const;
};

struct RuleTarget {
  int order = 32;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 0;
  bool force_monte_carlo = false;
};

QuadratureRule build_rule(const Weight& w, const RuleTarget& target, double scale = 1.0);
// One line per node: coordinates then weight.
void write_rule_csv(const QuadratureRule& rule, std::ostream& out);

struct Integrand {
  std::function<double(const Vec&)> fn;
  Envelope envelope = Envelope::polynomial();
  std::vector<Sym> parity;  // empty when unknown
};

Integrand as_integrand(const ScalarField& f);

struct Integral {
  double value = 0.0;
  double std_error = 0.0;
};

class Measure {
 public:
  // mu_{w,lambda}: density proportional to w exp(-|x|^2/(2 lambda^2))
  static Measure gaussian(const Weight& w, double lambda = 1.0, const RuleTarget& target = {});
  // nu = w dx
  static Measure lebesgue(const Weight& w, const RuleTarget& target = {});

  const Weight& weight() const { return state_->weight; }
  const Cone& cone() const { return state_->weight.cone(); }
  int dim() const { return state_->weight.dim(); }
  std::optional<double> scale() const { return state_->scale; }
  bool normalized() const { return state_->scale.has_value(); }
  const RuleTarget& target() const { return state_->target; }

  // C_{w,lambda} = (integral of w exp(-|x|^2/(2 lambda^2)))^{-1}
  double normalization() const;
  // Rule of the Gaussian measure (scale lambda), or the unit-scale rule for nu.
  const QuadratureRule& rule() const;
  // Rule against w exp(-|x|^2/(2 sigma^2)), cached per sigma.
  std::shared_ptr<const QuadratureRule> rule_at(double sigma) const;

  Integral integrate(const Integrand& g) const;
  Integral integrate(const ScalarField& f) const { return integrate(as_integrand(f)); }

  // True when the odd-symmetry shortcut may be applied in this axis.
  bool symmetric_in(int axis) const { return state_->weight.reflection_symmetric(axis); }

 private:
  struct State {
    Weight weight;
    std::optional<double> scale;
    RuleTarget target;
    mutable std::mutex mutex;
    mutable std::map<double, std::shared_ptr<const QuadratureRule>> rules;
    // Same measure restricted to x_k > 0 on a set of mirror axes (bit mask).
    mutable std::map<unsigned long, std::shared_ptr<State>> folds;
    State(Weight w, std::optional<double> s, RuleTarget t) : weight(std::move(w)), scale(s), target(t) {}
  };
  explicit Measure(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> folded(const std::vector<int>& axes) const;
  std::shared_ptr<State> state_;
};

double normalization_constant(const Weight& w, double lambda, const RuleTarget& target = {});
Integral integrate(const Measure& m, const ScalarField& f);
Integral integrate(const Measure& m, const Integrand& g);

struct SpecialMoments {
  double second_moment = 0.0;
  std::vector<double> axis_moments;
};
SpecialMoments special_moments(const Measure& m);

}  // namespace wgauss
