/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/gauss_rules.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <boost/multiprecision/mpfr.hpp>

#include "wgauss/types.hpp"

namespace wgauss {

namespace {

using big = boost::multiprecision::mpfr_float;

void check_order(int order) {
  if (order < 1) raise(ErrorCode::parameter, "rule order must be positive");
  if (order > kMaxRuleOrder)
    raise(ErrorCode::resource, "rule order " + std::to_string(order) + " exceeds " + std::to_string(kMaxRuleOrder));
}

void check_exponent(double a) {
  if (!(a >= 0) || !std::isfinite(a)) raise(ErrorCode::parameter, "density exponent must be finite and >= 0");
}

big half_moment(const big& a, int k) {
  big e = (a + k + 1) / 2;
  return boost::multiprecision::pow(big(2), e - 1) * boost::multiprecision::tgamma(e);
}

std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double generalized_hermite_moment(double a, Support1D support, int k) {
  check_exponent(a);
  double e = (a + k + 1) / 2;
  double half = std::exp((e - 1) * std::log(2.0) + std::lgamma(e));
  if (support == Support1D::half_line) return half;
  return k % 2 == 0 ? 2 * half : 0.0;
}

Recurrence generalized_hermite_recurrence(double a, Support1D support, int order) {
  check_order(order);
  check_exponent(a);
  // The moment-to-recurrence map loses roughly one decimal digit per order.
  const unsigned digits = 40 + 3 * static_cast<unsigned>(order) / 2;
  std::lock_guard<std::mutex> lock(rule_mutex());
  const unsigned saved = big::default_precision();
  big::default_precision(digits);

  const int N = order;
  big ab(a);
  std::vector<big> m(2 * N);
  for (int k = 0; k < 2 * N; ++k) {
    if (support == Support1D::half_line)
      m[k] = half_moment(ab, k);
    else
      m[k] = k % 2 == 0 ? big(2 * half_moment(ab, k)) : big(0);
  }

  std::vector<big> alpha(N), beta(N);
  std::vector<big> prev(2 * N, big(0)), cur(m), next(2 * N, big(0));
  alpha[0] = m[1] / m[0];
  beta[0] = m[0];
  for (int k = 1; k < N; ++k) {
    for (int l = k; l < 2 * N - k; ++l)
      next[l] = cur[l + 1] - alpha[k - 1] * cur[l] - beta[k - 1] * prev[l];
    alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
    beta[k] = next[k] / cur[k - 1];
    std::swap(prev, cur);
    std::swap(cur, next);
  }

  Recurrence rec;
  rec.alpha.resize(N);
  rec.beta.resize(N);
  for (int k = 0; k < N; ++k) {
    rec.alpha[k] = alpha[k].convert_to<long double>();
    rec.beta[k] = beta[k].convert_to<long double>();
  }
  big::default_precision(saved);
  if (support == Support1D::full_line)
    for (auto& x : rec.alpha) x = 0;
  return rec;
}

Rule1D gauss_rule_from_recurrence(const Recurrence& rec, int order) {
  if (static_cast<int>(rec.alpha.size()) < order || static_cast<int>(rec.beta.size()) < order)
    raise(ErrorCode::parameter, "recurrence shorter than requested order");
  Eigen::VectorXd diag(order), sub(std::max(order - 1, 0));
  for (int k = 0; k < order; ++k) diag(k) = static_cast<double>(rec.alpha[k]);
  for (int k = 1; k < order; ++k) {
    if (!(rec.beta[k] > 0)) raise(ErrorCode::integration_failure, "recurrence lost positivity");
    sub(k - 1) = static_cast<double>(std::sqrt(rec.beta[k]));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Rule1D r;
  r.nodes.resize(order);
  r.weights.resize(order);
  for (int j = 0; j < order; ++j) {
    long double x = es.eigenvalues()(j);
    long double p_prev = 0, p = 1.0L / std::sqrt(rec.beta[0]), sum = p * p;
    for (int k = 0; k + 1 < order; ++k) {
      long double b_k = k == 0 ? 0.0L : std::sqrt(rec.beta[k]);
      long double p_next = ((x - rec.alpha[k]) * p - b_k * p_prev) / std::sqrt(rec.beta[k + 1]);
      p_prev = p;
      p = p_next;
      sum += p * p;
    }
    r.nodes[j] = static_cast<double>(x);
    r.weights[j] = static_cast<double>(1.0L / sum);
  }
  return r;
}

const Rule1D& generalized_hermite_rule(double a, Support1D support, int order) {
  check_order(order);
  check_exponent(a);
  static std::map<std::tuple<double, int, int>, Rule1D> cache;
  static std::mutex cache_mutex;
  const auto key = std::make_tuple(a, static_cast<int>(support), order);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rule1D r = gauss_rule_from_recurrence(generalized_hermite_recurrence(a, support, order), order);
  if (support == Support1D::full_line) {
    // exact mirror symmetry keeps odd integrands at zero
    for (int i = 0; i < order / 2; ++i) {
      int j = order - 1 - i;
      double x = 0.5 * (r.nodes[j] - r.nodes[i]);
      double w = 0.5 * (r.weights[i] + r.weights[j]);
      r.nodes[i] = -x;
      r.nodes[j] = x;
      r.weights[i] = r.weights[j] = w;
    }
    if (order % 2 == 1) r.nodes[order / 2] = 0.0;
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(r)).first->second;
}

Rule1D gauss_legendre(int order, double lo, double hi) {
  check_order(order);
  Recurrence rec;
  rec.alpha.assign(order, 0.0L);
  rec.beta.resize(order);
  rec.beta[0] = 2;
  for (int k = 1; k < order; ++k) rec.beta[k] = static_cast<long double>(k) * k / (4.0L * k * k - 1);
  Rule1D r = gauss_rule_from_recurrence(rec, order);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int j = 0; j < order; ++j) {
    r.nodes[j] = mid + half * r.nodes[j];
    r.weights[j] *= half;
  }
  return r;
}

}  // namespace wgauss
