/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "wgauss/gauss_rules.hpp"

namespace wgauss {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxNodes = 50'000'000;

// A factor of a tensor rule acting on a subset of the coordinates.
struct Block {
  std::vector<int> axes;
  std::vector<double> pts;  // axes.size() values per node
  std::vector<double> wts;
  std::size_t size() const { return wts.size(); }
};

Block line_block(int axis, int sign, double a, double sigma, int order) {
  const Rule1D& r = generalized_hermite_rule(a, sign == 0 ? Support1D::full_line : Support1D::half_line, order);
  Block b;
  b.axes = {axis};
  const double wscale = std::pow(sigma, a + 1.0);
  for (std::size_t j = 0; j < r.nodes.size(); ++j) {
    b.pts.push_back((sign < 0 ? -1.0 : 1.0) * sigma * r.nodes[j]);
    b.wts.push_back(wscale * r.weights[j]);
  }
  return b;
}

// Angular interval allowed by the sign restrictions of the two plane axes.
// Returns false for the unrestricted full circle.
bool plane_arc(int s1, int s2, double& lo, double& hi) {
  if (s1 == 0 && s2 == 0) {
    lo = 0;
    hi = 2 * kPi;
    return false;
  }
  if (s2 == 0) {
    lo = s1 > 0 ? -kPi / 2 : kPi / 2;
    hi = lo + kPi;
  } else if (s1 == 0) {
    lo = s2 > 0 ? 0 : kPi;
    hi = lo + kPi;
  } else {
    if (s1 > 0 && s2 > 0) lo = 0;
    if (s1 < 0 && s2 > 0) lo = kPi / 2;
    if (s1 < 0 && s2 < 0) lo = kPi;
    if (s1 > 0 && s2 < 0) lo = 3 * kPi / 2;
    hi = lo + kPi / 2;
  }
  return true;
}

struct AngleRule {
  std::vector<double> theta, wts;
};

// Gauss-Legendre on [lo, hi]; with `smooth` the nodes are pulled toward the
// endpoints through a smoothstep map to soften endpoint singularities.
void arc_rule(double lo, double hi, int order, bool smooth, AngleRule& out) {
  Rule1D r = gauss_legendre(order, 0.0, 1.0);
  for (int j = 0; j < order; ++j) {
    double u = r.nodes[j], s = u, ds = 1.0;
    if (smooth) {
      s = u * u * (3 - 2 * u);
      ds = 6 * u * (1 - u);
    }
    out.theta.push_back(lo + (hi - lo) * s);
    out.wts.push_back((hi - lo) * ds * r.weights[j]);
  }
}

AngleRule circle_rule(int s1, int s2, int order, std::vector<double> zeros, bool smooth) {
  AngleRule out;
  double lo, hi;
  bool restricted = plane_arc(s1, s2, lo, hi);
  if (!restricted && zeros.empty()) {
    const int m = 2 * order;
    for (int j = 0; j < m; ++j) {
      out.theta.push_back(2 * kPi * j / m);
      out.wts.push_back(2 * kPi / m);
    }
    return out;
  }
  // map zero directions into [lo, lo + 2pi)
  for (auto& z : zeros) {
    z = std::fmod(z - lo, 2 * kPi);
    if (z < 0) z += 2 * kPi;
    z += lo;
  }
  std::sort(zeros.begin(), zeros.end());
  if (!restricted) {
    lo = zeros.front();
    hi = lo + 2 * kPi;
  }
  std::vector<double> cuts{lo};
  for (double z : zeros)
    if (z > lo + 1e-14 && z < hi - 1e-14) cuts.push_back(z);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) arc_rule(cuts[i], cuts[i + 1], order, smooth, out);
  return out;
}

Block polar_block(const std::vector<int>& axes, const std::vector<int>& signs, double alpha, double sigma, int order,
                  const WeightSpec* angular, std::vector<double> zeros, bool smooth) {
  const int m = static_cast<int>(axes.size());
  Block b;
  b.axes = axes;
  Block radial = line_block(-1, 1, m - 1 + alpha, sigma, order);
  if (m == 2) {
    AngleRule ang = circle_rule(signs[axes[0]], signs[axes[1]], order, std::move(zeros), smooth);
    for (std::size_t i = 0; i < radial.size(); ++i) {
      for (std::size_t j = 0; j < ang.theta.size(); ++j) {
        Vec u(2);
        u << std::cos(ang.theta[j]), std::sin(ang.theta[j]);
        double wa = angular ? spec_value(*angular, u) : 1.0;
        b.pts.push_back(radial.pts[i] * u(0));
        b.pts.push_back(radial.pts[i] * u(1));
        b.wts.push_back(radial.wts[i] * ang.wts[j] * wa);
      }
    }
    return b;
  }
  // m == 3: x = r (sqrt(1-t^2) cos th, sqrt(1-t^2) sin th, t)
  AngleRule ang = circle_rule(signs[axes[0]], signs[axes[1]], order, {}, false);
  int s3 = signs[axes[2]];
  Rule1D t = gauss_legendre(order, s3 > 0 ? 0.0 : -1.0, s3 < 0 ? 0.0 : 1.0);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    for (std::size_t k = 0; k < t.nodes.size(); ++k) {
      double st = std::sqrt(1 - t.nodes[k] * t.nodes[k]);
      for (std::size_t j = 0; j < ang.theta.size(); ++j) {
        double r = radial.pts[i];
        b.pts.push_back(r * st * std::cos(ang.theta[j]));
        b.pts.push_back(r * st * std::sin(ang.theta[j]));
        b.pts.push_back(r * t.nodes[k]);
        b.wts.push_back(radial.wts[i] * t.weights[k] * ang.wts[j]);
      }
    }
  }
  return b;
}

bool build_blocks(const WeightSpec& spec, const std::vector<int>& axes, const std::vector<int>& signs, double sigma,
                  int order, std::vector<Block>& out) {
  const int m = static_cast<int>(axes.size());
  if (const auto* mono = std::get_if<Monomial>(&spec.v)) {
    for (int i = 0; i < m; ++i) out.push_back(line_block(axes[i], signs[axes[i]], mono->exponents[i], sigma, order));
    return true;
  }
  if (const auto* tilt = std::get_if<GaussianTilt>(&spec.v)) {
    double prec = 1.0 / (sigma * sigma) + tilt->s;
    if (!(prec > 0))
      raise(ErrorCode::integration_failure, "w exp(-|x|^2/(2 scale^2)) is not integrable for this tilt and scale");
    for (int i = 0; i < m; ++i) out.push_back(line_block(axes[i], signs[axes[i]], 0.0, 1.0 / std::sqrt(prec), order));
    return true;
  }
  if (const auto* rad = std::get_if<Radial>(&spec.v)) {
    if (m == 1) {
      out.push_back(line_block(axes[0], signs[axes[0]], rad->alpha, sigma, order));
      return true;
    }
    if (m > 3) return false;
    out.push_back(polar_block(axes, signs, rad->alpha, sigma, order, nullptr, {}, false));
    return true;
  }
  if (const auto* dk = std::get_if<DunklProduct>(&spec.v)) {
    double alpha = 0;
    bool smooth = false;
    for (double k : dk->multiplicities) {
      alpha += 2 * k;
      double two_k = 2 * k;
      if (std::abs(two_k / 2 - std::round(two_k / 2)) > 0) smooth = true;  // |t|^{2k} not a polynomial
    }
    if (m == 1) {
      out.push_back(line_block(axes[0], signs[axes[0]], alpha, sigma, order));
      return true;
    }
    if (m != 2) return false;
    std::vector<double> zeros;
    for (std::size_t j = 0; j < dk->roots.size(); ++j) {
      if (dk->multiplicities[j] == 0) continue;
      double th = std::atan2(dk->roots[j](1), dk->roots[j](0));
      zeros.push_back(th + kPi / 2);
      zeros.push_back(th - kPi / 2);
    }
    out.push_back(polar_block(axes, signs, alpha, sigma, order, &spec, zeros, smooth));
    return true;
  }
  if (const auto* pp = std::get_if<PartialProduct>(&spec.v)) {
    std::vector<int> inner;
    for (int i = 0; i < m; ++i) {
      if (std::find(pp->free_coords.begin(), pp->free_coords.end(), i) != pp->free_coords.end())
        out.push_back(line_block(axes[i], signs[axes[i]], 0.0, sigma, order));
      else
        inner.push_back(axes[i]);
    }
    return build_blocks(*pp->inner, inner, signs, sigma, order, out);
  }
  return false;
}

QuadratureRule monte_carlo_rule(const Weight& w, const RuleTarget& target, double sigma) {
  if (!w.sampler_available())
    raise(ErrorCode::unsupported, "weight '" + w.kind_name() + "' has no sampler for Monte Carlo integration");
  if (target.mc_samples < 2) raise(ErrorCode::parameter, "Monte Carlo needs at least 2 samples");
  const int n = w.dim();
  const double sp = sigma * w.sampler_scale();
  const double frac = w.cone().gaussian_mass_fraction();
  const double N = static_cast<double>(target.mc_samples);
  const double log_norm = 0.5 * n * std::log(2 * kPi * sp * sp) + std::log(frac) - std::log(N);
  QuadratureRule rule;
  rule.kind = RuleKind::monte_carlo;
  rule.dim = n;
  rule.order = 0;
  rule.scale = sigma;
  rule.seed = target.seed;
  rule.samples = target.mc_samples;
  rule.nodes.resize(n, static_cast<Eigen::Index>(target.mc_samples));
  rule.weights.resize(target.mc_samples);
  for (std::size_t i = 0; i < target.mc_samples; ++i) {
    Vec z(n);
    for (int k = 0; k < n; ++k) z(k) = sp * standard_normal(target.seed, i * n + k);
    Vec x = w.cone().fold(z);
    double r2 = x.squaredNorm();
    double lw = spec_value(w.spec(), x);
    rule.nodes.col(static_cast<Eigen::Index>(i)) = x;
    rule.weights[i] = lw * std::exp(-0.5 * r2 / (sigma * sigma) + 0.5 * r2 / (sp * sp) + log_norm);
  }
  return rule;
}

}  // namespace

double QuadratureRule::total_weight() const {
  double s = 0;
  for (double v : weights) s += v;
  return s;
}

QuadratureRule build_rule(const Weight& w, const RuleTarget& target, double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) raise(ErrorCode::parameter, "rule scale must be positive");
  if (target.order > kMaxRuleOrder)
    raise(ErrorCode::resource, "rule order " + std::to_string(target.order) + " exceeds " +
                                   std::to_string(kMaxRuleOrder) + " per axis");
  if (target.order < 1) raise(ErrorCode::parameter, "rule order must be positive");
  const int n = w.dim();
  std::vector<Block> blocks;
  bool tensor = false;
  auto signs = w.cone().axis_signs();
  if (!target.force_monte_carlo && signs) {
    std::vector<int> axes(n);
    for (int k = 0; k < n; ++k) axes[k] = k;
    tensor = build_blocks(w.spec(), axes, *signs, scale, target.order, blocks);
  }
  if (!tensor) return monte_carlo_rule(w, target, scale);

  std::size_t total = 1;
  for (const auto& b : blocks) {
    total *= b.size();
    if (total > kMaxNodes) raise(ErrorCode::resource, "tensor rule would exceed the node budget");
  }
  QuadratureRule rule;
  rule.kind = RuleKind::tensor_generalized_hermite;
  rule.dim = n;
  rule.order = target.order;
  rule.scale = scale;
  rule.nodes.resize(n, static_cast<Eigen::Index>(total));
  rule.weights.resize(total);
  std::vector<std::size_t> idx(blocks.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    double wt = 1.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Block& blk = blocks[b];
      const std::size_t m = blk.axes.size();
      for (std::size_t a = 0; a < m; ++a) rule.nodes(blk.axes[a], static_cast<Eigen::Index>(i)) = blk.pts[idx[b] * m + a];
      wt *= blk.wts[idx[b]];
    }
    rule.weights[i] = wt;
    for (std::size_t b = blocks.size(); b-- > 0;) {
      if (++idx[b] < blocks[b].size()) break;
      idx[b] = 0;
    }
  }
  return rule;
}

void write_rule_csv(const QuadratureRule& rule, std::ostream& out) {
  char buf[40];
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (int k = 0; k < rule.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,", rule.nodes(k, static_cast<Eigen::Index>(i)));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", rule.weights[i]);
    out << buf;
  }
}

Integrand as_integrand(const ScalarField& f) {
  return Integrand{[f](const Vec& x) { return f.value(x); }, f.envelope(), f.parities()};
}

Measure Measure::gaussian(const Weight& w, double lambda, const RuleTarget& target) {
  if (!(lambda > 0) || !std::isfinite(lambda)) raise(ErrorCode::parameter, "Gaussian scale must be positive");
  return Measure(std::make_shared<State>(w, lambda, target));
}

Measure Measure::lebesgue(const Weight& w, const RuleTarget& target) {
  return Measure(std::make_shared<State>(w, std::nullopt, target));
}

std::shared_ptr<const QuadratureRule> Measure::rule_at(double sigma) const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->rules.find(sigma);
  if (it != state_->rules.end()) return it->second;
  if (state_->rules.size() > 256) state_->rules.clear();
  auto rule = std::make_shared<const QuadratureRule>(build_rule(state_->weight, state_->target, sigma));
  state_->rules.emplace(sigma, rule);
  return rule;
}

const QuadratureRule& Measure::rule() const { return *rule_at(state_->scale.value_or(1.0)); }

double Measure::normalization() const {
  if (!normalized()) raise(ErrorCode::contract, "the Lebesgue-type measure w dx has no normalization");
  double z = rule_at(*state_->scale)->total_weight();
  if (!(z > 0) || !std::isfinite(z)) raise(ErrorCode::integration_failure, "normalizing integral is not finite");
  return 1.0 / z;
}

// Null when folding would not give a tensor rule.
std::shared_ptr<Measure::State> Measure::folded(const std::vector<int>& axes) const {
  unsigned long mask = 0;
  for (int k : axes) mask |= 1UL << k;
  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->folds.find(mask);
  if (it != state_->folds.end()) return it->second;
  const Weight& w = state_->weight;
  std::vector<int> restricted = axes;
  auto signs = *w.cone().axis_signs();
  for (int k = 0; k < w.dim(); ++k)
    if (signs[k] != 0) restricted.push_back(k);
  std::shared_ptr<State> f;
  try {
    Weight half(w.spec(), Cone::orthant(w.dim(), restricted));
    auto probe = build_rule(half, state_->target, 1.0);
    if (probe.kind != RuleKind::monte_carlo)
      f = std::make_shared<State>(std::move(half), state_->scale, state_->target);
  } catch (const Error&) {
    f.reset();
  }
  state_->folds.emplace(mask, f);
  return f;
}

Integral Measure::integrate(const Integrand& g) const {
  for (std::size_t k = 0; k < g.parity.size(); ++k)
    if (g.parity[k] == Sym::odd && symmetric_in(static_cast<int>(k))) return {0.0, 0.0};

  // Even integrands on mirror axes: integrate over x_k > 0, so a kink of |f| at
  // x_k = 0 sits on the boundary where the rule resolves it.
  if (!std::holds_alternative<Custom>(state_->weight.spec().v) && state_->weight.dim() < 64) {
    auto signs = state_->weight.cone().axis_signs();
    bool positive = signs.has_value();
    if (signs)
      for (int s : *signs) positive = positive && s >= 0;
    std::vector<int> axes;
    if (positive)
      for (std::size_t k = 0; k < g.parity.size(); ++k)
        if (g.parity[k] == Sym::even && (*signs)[k] == 0 && symmetric_in(static_cast<int>(k)))
          axes.push_back(static_cast<int>(k));
    if (!axes.empty()) {
      if (auto f = folded(axes)) {
        Integral r = Measure(f).integrate(g);
        if (!normalized()) {
          const double factor = std::ldexp(1.0, static_cast<int>(axes.size()));
          r.value *= factor;
          r.std_error *= factor;
        }
        return r;
      }
    }
  }

  double sigma, fold_rate = 0.0;
  if (normalized()) {
    sigma = *state_->scale;
    // fold a declared Gaussian decay into the rule, as for w dx
    if (g.envelope.decays()) {
      fold_rate = g.envelope.rate;
      sigma = 1.0 / std::sqrt(1.0 / (sigma * sigma) + 2.0 * fold_rate);
    }
  } else {
    if (!g.envelope.decays())
      raise(ErrorCode::decay_contract, "integration against w dx needs a Gaussian decay envelope, got " +
                                           to_string(g.envelope));
    fold_rate = g.envelope.rate;
    sigma = 1.0 / std::sqrt(2.0 * fold_rate);
  }
  auto rule = rule_at(sigma);
  const std::size_t N = rule->size();
  std::vector<double> terms(N);
  double sum = 0, wsum = 0;
  for (std::size_t i = 0; i < N; ++i) {
    Vec x = rule->node(i);
    double v = g.fn(x);
    if (fold_rate > 0) v *= std::exp(fold_rate * x.squaredNorm());
    if (!std::isfinite(v)) raise(ErrorCode::evaluation, "integrand is not finite at a quadrature node");
    terms[i] = v;
    sum += rule->weights[i] * v;
    wsum += rule->weights[i];
  }
  Integral out;
  if (normalized()) {
    if (fold_rate > 0) wsum = rule_at(*state_->scale)->total_weight();
    out.value = sum / wsum;
    if (rule->kind == RuleKind::monte_carlo) {
      double acc = 0;
      if (fold_rate > 0) {
        // per-sample estimates N W_i g_i / Z around their mean
        const double dn = static_cast<double>(N);
        for (std::size_t i = 0; i < N; ++i) {
          double d = dn * rule->weights[i] * terms[i] / wsum - out.value;
          acc += d * d;
        }
        out.std_error = std::sqrt(acc / (dn - 1.0) / dn);
      } else {
        for (std::size_t i = 0; i < N; ++i) {
          double d = rule->weights[i] * (terms[i] - out.value);
          acc += d * d;
        }
        out.std_error = std::sqrt(acc) / wsum;
      }
    }
  } else {
    out.value = sum;
    if (rule->kind == RuleKind::monte_carlo) {
      double mean = sum / static_cast<double>(N), acc = 0;
      for (std::size_t i = 0; i < N; ++i) {
        double d = rule->weights[i] * terms[i] - mean;
        acc += d * d;
      }
      out.std_error = std::sqrt(acc * static_cast<double>(N) / static_cast<double>(N - 1));
    }
  }
  return out;
}

double normalization_constant(const Weight& w, double lambda, const RuleTarget& target) {
  return Measure::gaussian(w, lambda, target).normalization();
}

Integral integrate(const Measure& m, const ScalarField& f) { return m.integrate(f); }
Integral integrate(const Measure& m, const Integrand& g) { return m.integrate(g); }

SpecialMoments special_moments(const Measure& m) {
  if (!m.normalized()) raise(ErrorCode::contract, "moments need a Gaussian measure");
  SpecialMoments out;
  const int n = m.dim();
  for (int k = 0; k < n; ++k) {
    std::vector<Sym> par(n, Sym::even);
    out.axis_moments.push_back(m.integrate(Integrand{[k](const Vec& x) { return x(k) * x(k); },
                                                     Envelope::polynomial(), par})
                                   .value);
  }
  out.second_moment = m.integrate(Integrand{[](const Vec& x) { return x.squaredNorm(); }, Envelope::polynomial(),
                                            std::vector<Sym>(n, Sym::even)})
                          .value;
  return out;
}

}  // namespace wgauss
