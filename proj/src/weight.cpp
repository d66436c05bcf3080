/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wgauss {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coordinates of x that the inner weight of a partial product sees.
Vec inner_part(const PartialProduct& p, const Vec& x, std::vector<int>* map = nullptr) {
  std::vector<int> idx;
  for (int k = 0; k < x.size(); ++k)
    if (std::find(p.free_coords.begin(), p.free_coords.end(), k) == p.free_coords.end()) idx.push_back(k);
  Vec y(static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) y(i) = x(idx[i]);
  if (map) *map = std::move(idx);
  return y;
}

void require_monomial(const Monomial& m, int n) {
  if (static_cast<int>(m.exponents.size()) != n)
    raise(ErrorCode::parameter, "monomial exponent count does not match dimension");
  for (double a : m.exponents)
    if (!(a >= 0) || !std::isfinite(a)) raise(ErrorCode::parameter, "monomial exponents must be finite and nonnegative");
}

double log_value_spec(const WeightSpec& spec, const Vec& x) {
  return std::visit(
      overloaded{
          [&](const Monomial& m) {
            double s = 0;
            for (int i = 0; i < x.size(); ++i)
              if (m.exponents[i] != 0) s += m.exponents[i] * std::log(std::abs(x(i)));
            return s;
          },
          [&](const Radial& r) { return r.alpha == 0 ? 0.0 : r.alpha * std::log(x.norm()); },
          [&](const DunklProduct& d) {
            double s = 0;
            for (std::size_t j = 0; j < d.roots.size(); ++j)
              if (d.multiplicities[j] != 0) s += 2 * d.multiplicities[j] * std::log(std::abs(d.roots[j].dot(x)));
            return s;
          },
          [&](const GaussianTilt& t) { return -0.5 * t.s * x.squaredNorm(); },
          [&](const PartialProduct& p) { return log_value_spec(*p.inner, inner_part(p, x)); },
          [&](const Custom& c) { return c.log_weight(x); },
      },
      spec.v);
}

double value_spec(const WeightSpec& spec, const Vec& x) {
  return std::visit(
      overloaded{
          [&](const Monomial& m) {
            double v = 1;
            for (int i = 0; i < x.size(); ++i) v *= std::pow(std::abs(x(i)), m.exponents[i]);
            return v;
          },
          [&](const Radial& r) { return std::pow(x.norm(), r.alpha); },
          [&](const DunklProduct& d) {
            double v = 1;
            for (std::size_t j = 0; j < d.roots.size(); ++j)
              v *= std::pow(std::abs(d.roots[j].dot(x)), 2 * d.multiplicities[j]);
            return v;
          },
          [&](const GaussianTilt& t) { return std::exp(-0.5 * t.s * x.squaredNorm()); },
          [&](const PartialProduct& p) { return value_spec(*p.inner, inner_part(p, x)); },
          [&](const Custom& c) { return std::exp(c.log_weight(x)); },
      },
      spec.v);
}

void singular(const char* what) { raise(ErrorCode::singularity, what); }

Vec grad_spec(const WeightSpec& spec, const Vec& x) {
  const int n = static_cast<int>(x.size());
  return std::visit(
      overloaded{
          [&](const Monomial& m) {
            Vec g = Vec::Zero(n);
            for (int i = 0; i < n; ++i) {
              if (m.exponents[i] == 0) continue;
              if (std::abs(x(i)) <= kFacetTolerance) singular("monomial weight vanishes at this point");
              g(i) = m.exponents[i] / x(i);
            }
            return g;
          },
          [&](const Radial& r) {
            if (r.alpha == 0) return Vec(Vec::Zero(n));
            double r2 = x.squaredNorm();
            if (std::sqrt(r2) <= kFacetTolerance) singular("radial weight is singular at the origin");
            return Vec(r.alpha * x / r2);
          },
          [&](const DunklProduct& d) {
            Vec g = Vec::Zero(n);
            for (std::size_t j = 0; j < d.roots.size(); ++j) {
              if (d.multiplicities[j] == 0) continue;
              double t = d.roots[j].dot(x);
              if (std::abs(t) <= kFacetTolerance) singular("point lies on a root hyperplane");
              g += (2 * d.multiplicities[j] / t) * d.roots[j];
            }
            return g;
          },
          [&](const GaussianTilt& t) { return Vec(-t.s * x); },
          [&](const PartialProduct& p) {
            std::vector<int> map;
            Vec gi = grad_spec(*p.inner, inner_part(p, x, &map));
            Vec g = Vec::Zero(n);
            for (std::size_t i = 0; i < map.size(); ++i) g(map[i]) = gi(i);
            return g;
          },
          [&](const Custom& c) {
            if (!c.grad_log) raise(ErrorCode::unsupported, "custom weight has no gradient evaluator");
            return c.grad_log(x);
          },
      },
      spec.v);
}

Mat hess_spec(const WeightSpec& spec, const Vec& x) {
  const int n = static_cast<int>(x.size());
  return std::visit(
      overloaded{
          [&](const Monomial& m) {
            Mat h = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i) {
              if (m.exponents[i] == 0) continue;
              if (std::abs(x(i)) <= kFacetTolerance) singular("monomial weight vanishes at this point");
              h(i, i) = -m.exponents[i] / (x(i) * x(i));
            }
            return h;
          },
          [&](const Radial& r) {
            if (r.alpha == 0) return Mat(Mat::Zero(n, n));
            double r2 = x.squaredNorm();
            if (std::sqrt(r2) <= kFacetTolerance) singular("radial weight is singular at the origin");
            Mat h = Mat::Identity(n, n) / r2 - 2.0 * x * x.transpose() / (r2 * r2);
            return Mat(r.alpha * h);
          },
          [&](const DunklProduct& d) {
            Mat h = Mat::Zero(n, n);
            for (std::size_t j = 0; j < d.roots.size(); ++j) {
              if (d.multiplicities[j] == 0) continue;
              double t = d.roots[j].dot(x);
              if (std::abs(t) <= kFacetTolerance) singular("point lies on a root hyperplane");
              h -= (2 * d.multiplicities[j] / (t * t)) * d.roots[j] * d.roots[j].transpose();
            }
            return h;
          },
          [&](const GaussianTilt& t) { return Mat(-t.s * Mat::Identity(n, n)); },
          [&](const PartialProduct& p) {
            std::vector<int> map;
            Mat hi = hess_spec(*p.inner, inner_part(p, x, &map));
            Mat h = Mat::Zero(n, n);
            for (std::size_t i = 0; i < map.size(); ++i)
              for (std::size_t j = 0; j < map.size(); ++j) h(map[i], map[j]) = hi(i, j);
            return h;
          },
          [&](const Custom& c) {
            if (!c.hess_log) raise(ErrorCode::unsupported, "custom weight has no Hessian evaluator");
            return c.hess_log(x);
          },
      },
      spec.v);
}

// Analytic curvature when available. Returns nullopt for "needs sampling";
// throws inadmissible-weight when the condition fails analytically.
std::optional<double> analytic_curvature(const WeightSpec& spec, int n) {
  return std::visit(
      overloaded{
          [&](const Monomial&) -> std::optional<double> { return 0.0; },
          [&](const Radial& r) -> std::optional<double> {
            if (n == 1 || r.alpha == 0) return 0.0;
            raise(ErrorCode::inadmissible_weight,
                  "|x|^alpha with alpha > 0 in dimension >= 2 has -Hess log w with eigenvalue "
                  "-alpha/|x|^2 orthogonal to x, unbounded below near the origin");
          },
          [&](const DunklProduct&) -> std::optional<double> { return 0.0; },
          [&](const GaussianTilt& t) -> std::optional<double> { return t.s; },
          [&](const PartialProduct& p) -> std::optional<double> {
            auto k = analytic_curvature(*p.inner, n - static_cast<int>(p.free_coords.size()));
            if (!k) return std::nullopt;
            return p.free_coords.empty() ? *k : std::min(*k, 0.0);
          },
          [&](const Custom&) -> std::optional<double> { return std::nullopt; },
      },
      spec.v);
}

bool spec_log_concave(const WeightSpec& spec, int n) {
  return std::visit(overloaded{
                        [&](const Monomial&) { return true; },
                        [&](const Radial& r) { return n == 1 || r.alpha == 0; },
                        [&](const DunklProduct&) { return true; },
                        [&](const GaussianTilt& t) { return t.s >= 0; },
                        [&](const PartialProduct& p) {
                          return spec_log_concave(*p.inner, n - static_cast<int>(p.free_coords.size()));
                        },
                        [&](const Custom&) { return false; },
                    },
                    spec.v);
}

// Is w invariant under x_k -> -x_k?
bool spec_symmetric(const WeightSpec& spec, int n, int k) {
  return std::visit(
      overloaded{
          [&](const Monomial&) { return true; },
          [&](const Radial&) { return true; },
          [&](const DunklProduct& d) {
            for (std::size_t i = 0; i < d.roots.size(); ++i) {
              Vec r = d.roots[i];
              r(k) = -r(k);
              bool found = false;
              for (std::size_t j = 0; j < d.roots.size() && !found; ++j)
                found = d.multiplicities[j] == d.multiplicities[i] &&
                        ((r - d.roots[j]).norm() < 1e-14 || (r + d.roots[j]).norm() < 1e-14);
              if (!found) return false;
            }
            return true;
          },
          [&](const GaussianTilt&) { return true; },
          [&](const PartialProduct& p) {
            if (std::find(p.free_coords.begin(), p.free_coords.end(), k) != p.free_coords.end()) return true;
            int inner_k = 0;
            for (int j = 0; j < k; ++j)
              if (std::find(p.free_coords.begin(), p.free_coords.end(), j) == p.free_coords.end()) ++inner_k;
            return spec_symmetric(*p.inner, n - static_cast<int>(p.free_coords.size()), inner_k);
          },
          [&](const Custom&) { return false; },
      },
      spec.v);
}

void spec_free_axes(const WeightSpec& spec, const std::vector<int>& global, std::vector<int>& out) {
  std::visit(overloaded{
                 [&](const Monomial& m) {
                   for (std::size_t i = 0; i < m.exponents.size(); ++i)
                     if (m.exponents[i] == 0) out.push_back(global[i]);
                 },
                 [&](const PartialProduct& p) {
                   std::vector<int> inner;
                   for (std::size_t i = 0; i < global.size(); ++i) {
                     if (std::find(p.free_coords.begin(), p.free_coords.end(), static_cast<int>(i)) !=
                         p.free_coords.end())
                       out.push_back(global[i]);
                     else
                       inner.push_back(global[i]);
                   }
                   spec_free_axes(*p.inner, inner, out);
                 },
                 [&](const auto&) {},
             },
             spec.v);
}

// Normals of the hyperplanes on which w vanishes, in global coordinates.
void spec_zero_normals(const WeightSpec& spec, const std::vector<int>& global, int n, std::vector<Vec>& out) {
  std::visit(overloaded{
                 [&](const Monomial& m) {
                   for (std::size_t i = 0; i < m.exponents.size(); ++i)
                     if (m.exponents[i] > 0) out.push_back(Vec::Unit(n, global[i]));
                 },
                 [&](const Radial& r) {
                   if (global.size() == 1 && r.alpha > 0) out.push_back(Vec::Unit(n, global[0]));
                 },
                 [&](const DunklProduct& d) {
                   for (std::size_t j = 0; j < d.roots.size(); ++j) {
                     if (!(d.multiplicities[j] > 0)) continue;
                     Vec v = Vec::Zero(n);
                     for (std::size_t i = 0; i < global.size(); ++i) v(global[i]) = d.roots[j](i);
                     out.push_back(v);
                   }
                 },
                 [&](const PartialProduct& p) {
                   std::vector<int> inner;
                   for (std::size_t i = 0; i < global.size(); ++i)
                     if (std::find(p.free_coords.begin(), p.free_coords.end(), static_cast<int>(i)) ==
                         p.free_coords.end())
                       inner.push_back(global[i]);
                   spec_zero_normals(*p.inner, inner, n, out);
                 },
                 [&](const auto&) {},
             },
             spec.v);
}

// <beta, x> keeps one sign on the cone interior iff +-beta lies in the dual
// cone. With orthonormal facets that means beta is a one-signed combination.
bool sign_constant_on_cone(const Vec& beta, const Cone& cone) {
  if (!cone.facets_orthogonal()) return true;  // cannot decide; trust the caller
  Vec r = beta;
  bool pos = false, neg = false;
  for (const auto& nu : cone.facets()) {
    double c = beta.dot(nu) / nu.squaredNorm();
    if (c > 1e-12) pos = true;
    if (c < -1e-12) neg = true;
    r -= c * nu;
  }
  return r.norm() <= 1e-10 * beta.norm() && !(pos && neg);
}

void validate_spec(const WeightSpec& spec, int n) {
  std::visit(overloaded{
                 [&](const Monomial& m) { require_monomial(m, n); },
                 [&](const Radial& r) {
                   if (!(r.alpha >= 0) || !std::isfinite(r.alpha))
                     raise(ErrorCode::parameter, "radial exponent must be finite and nonnegative");
                 },
                 [&](const DunklProduct& d) {
                   if (d.roots.empty() || d.roots.size() != d.multiplicities.size())
                     raise(ErrorCode::parameter, "Dunkl weight needs one multiplicity per root");
                   for (std::size_t j = 0; j < d.roots.size(); ++j) {
                     if (d.roots[j].size() != n) raise(ErrorCode::parameter, "Dunkl root has wrong dimension");
                     if (std::abs(d.roots[j].norm() - 1.0) > 1e-12)
                       raise(ErrorCode::parameter, "Dunkl roots must be unit vectors");
                     if (!(d.multiplicities[j] >= 0) || !std::isfinite(d.multiplicities[j]))
                       raise(ErrorCode::parameter, "Dunkl multiplicities must be nonnegative");
                   }
                 },
                 [&](const GaussianTilt& t) {
                   if (!(t.s > -1) || !std::isfinite(t.s))
                     raise(ErrorCode::inadmissible_weight, "Gaussian tilt needs s > -1");
                 },
                 [&](const PartialProduct& p) {
                   if (!p.inner) raise(ErrorCode::parameter, "partial product has no inner weight");
                   auto fc = p.free_coords;
                   std::sort(fc.begin(), fc.end());
                   if (std::adjacent_find(fc.begin(), fc.end()) != fc.end() || fc != p.free_coords)
                     raise(ErrorCode::parameter, "free coordinates must be strictly increasing");
                   for (int k : fc)
                     if (k < 0 || k >= n) raise(ErrorCode::parameter, "free coordinate out of range");
                   int m = n - static_cast<int>(fc.size());
                   if (m < 1) raise(ErrorCode::parameter, "partial product leaves no inner coordinates");
                   validate_spec(*p.inner, m);
                 },
                 [&](const Custom& c) {
                   if (!c.log_weight) raise(ErrorCode::parameter, "custom weight needs a log-weight evaluator");
                   if (c.sampler_scale && !(*c.sampler_scale > 0))
                     raise(ErrorCode::parameter, "custom sampler scale must be positive");
                 },
             },
             spec.v);
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

double min_eig_neg_hess(const Weight& w, const Vec& x) {
  Mat h = -w.hess_log(x);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool usable_point(const Weight& w, const Vec& x, double radius) {
  if (x.norm() > radius || !w.cone().interior(x)) return false;
  try {
    return std::isfinite(min_eig_neg_hess(w, x));
  } catch (const Error&) {
    return false;
  }
}

CurvatureBound sampled_curvature(const Weight& w, const CurvatureSampler& s) {
  static constexpr int primes[kMaxDim] = {2, 3, 5, 7, 11, 13};
  const int n = w.dim();
  struct Hit {
    double value;
    Vec x;
  };
  std::vector<Hit> worst;
  std::size_t accepted = 0;
  const std::size_t max_attempts = 100 * std::max<std::size_t>(s.points, 1);
  for (std::uint64_t i = 1; accepted < s.points && i <= max_attempts; ++i) {
    Vec u(n);
    for (int k = 0; k < n; ++k) u(k) = 2.0 * radical_inverse(i, primes[k]) - 1.0;
    if (u.norm() > 1.0) continue;
    Vec x = s.radius * u;
    if (w.cone().facets_orthogonal()) x = w.cone().fold(x);
    if (!usable_point(w, x, s.radius)) continue;
    ++accepted;
    double v = min_eig_neg_hess(w, x);
    if (worst.size() < s.descent_starts || v < worst.back().value) {
      worst.push_back({v, x});
      std::sort(worst.begin(), worst.end(), [](const Hit& a, const Hit& b) { return a.value < b.value; });
      if (worst.size() > s.descent_starts) worst.pop_back();
    }
  }
  if (accepted == 0) raise(ErrorCode::inadmissible_weight, "no usable interior sample points");

  // compass search from each of the worst points
  for (auto& hit : worst) {
    double step = 0.05 * s.radius;
    for (int iter = 0; iter < 20000 && step > 1e-11; ++iter) {
      bool improved = false;
      for (int k = 0; k < n && !improved; ++k) {
        for (double sign : {1.0, -1.0}) {
          Vec y = hit.x;
          y(k) += sign * step;
          if (!usable_point(w, y, s.radius)) continue;
          double v = min_eig_neg_hess(w, y);
          if (v < hit.value) {
            hit = {v, y};
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }
  std::sort(worst.begin(), worst.end(), [](const Hit& a, const Hit& b) { return a.value < b.value; });
  CurvatureBound out;
  out.value = worst.front().value;
  out.certificate.analytic = false;
  out.certificate.num_points = accepted;
  out.certificate.min_eigenvalue_found = worst.front().value;
  out.certificate.minimizer = worst.front().x;
  if (!(out.value > -1.0))
    raise(ErrorCode::inadmissible_weight,
          "sampled curvature bound " + std::to_string(out.value) + " violates K > -1");
  return out;
}

}  // namespace

int spec_dim(const WeightSpec& spec) {
  return std::visit(overloaded{
                        [](const Monomial& m) { return static_cast<int>(m.exponents.size()); },
                        [](const DunklProduct& d) { return d.roots.empty() ? -1 : static_cast<int>(d.roots[0].size()); },
                        [](const PartialProduct& p) {
                          int m = p.inner ? spec_dim(*p.inner) : -1;
                          return m < 0 ? -1 : m + static_cast<int>(p.free_coords.size());
                        },
                        [](const auto&) { return -1; },
                    },
                    spec.v);
}

std::optional<double> spec_degree(const WeightSpec& spec) {
  return std::visit(overloaded{
                        [](const Monomial& m) -> std::optional<double> {
                          return std::accumulate(m.exponents.begin(), m.exponents.end(), 0.0);
                        },
                        [](const Radial& r) -> std::optional<double> { return r.alpha; },
                        [](const DunklProduct& d) -> std::optional<double> {
                          return 2.0 * std::accumulate(d.multiplicities.begin(), d.multiplicities.end(), 0.0);
                        },
                        [](const GaussianTilt& t) -> std::optional<double> {
                          if (t.s == 0) return 0.0;
                          return std::nullopt;
                        },
                        [](const PartialProduct& p) { return spec_degree(*p.inner); },
                        [](const Custom& c) { return c.degree; },
                    },
                    spec.v);
}

std::string spec_kind(const WeightSpec& spec) {
  return std::visit(overloaded{
                        [](const Monomial&) { return std::string("monomial"); },
                        [](const Radial&) { return std::string("radial"); },
                        [](const DunklProduct&) { return std::string("dunkl"); },
                        [](const GaussianTilt&) { return std::string("gaussian_tilt"); },
                        [](const PartialProduct&) { return std::string("partial"); },
                        [](const Custom& c) { return c.name; },
                    },
                    spec.v);
}

double spec_value(const WeightSpec& spec, const Vec& x) { return value_spec(spec, x); }

WeightSpec partial(WeightSpec inner, std::vector<int> free_coords) {
  return WeightSpec{PartialProduct{std::make_shared<const WeightSpec>(std::move(inner)), std::move(free_coords)}};
}

Weight::Weight(WeightSpec spec, Cone cone, CurvatureSampler sampler) {
  auto impl = std::make_shared<Impl>();
  const int n = cone.dim();
  int sd = spec_dim(spec);
  if (sd >= 0 && sd != n) raise(ErrorCode::parameter, "weight dimension does not match cone dimension");
  validate_spec(spec, n);
  impl->spec = std::move(spec);
  impl->cone = std::move(cone);
  impl->kind = spec_kind(impl->spec);
  impl->degree = spec_degree(impl->spec);
  impl->log_concave = spec_log_concave(impl->spec, n);

  impl->symmetric.assign(n, false);
  for (int k = 0; k < n; ++k) {
    bool cone_sym = true;
    for (const auto& nu : impl->cone.facets())
      if (nu(k) != 0) cone_sym = false;
    impl->symmetric[k] = cone_sym && spec_symmetric(impl->spec, n, k);
  }
  std::vector<int> global(n);
  std::iota(global.begin(), global.end(), 0);
  spec_free_axes(impl->spec, global, impl->free_axes);
  std::sort(impl->free_axes.begin(), impl->free_axes.end());
  std::vector<Vec> zeros;
  spec_zero_normals(impl->spec, global, n, zeros);
  for (const auto& beta : zeros)
    if (!sign_constant_on_cone(beta, impl->cone)) impl->support_convex = false;

  if (const auto* c = std::get_if<Custom>(&impl->spec.v)) {
    impl->samplable = c->sampler_scale.has_value() && impl->cone.facets_orthogonal();
    impl->sampler_scale = c->sampler_scale.value_or(1.0);
  } else {
    impl->samplable = impl->cone.facets_orthogonal();
  }
  impl_ = impl;

  try {
    auto k = analytic_curvature(impl->spec, n);
    if (k) {
      impl->curvature = *k;
      impl->certificate.analytic = true;
    } else {
      auto b = sampled_curvature(*this, sampler);
      impl->curvature = b.value;
      impl->certificate = b.certificate;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::inadmissible_weight) throw;
    impl->curvature.reset();
    impl->reason = e.what();
  }
}

void require_convex_support(const Weight& w) {
  if (!w.support_convex())
    raise(ErrorCode::contract,
          "weight vanishes on a hyperplane crossing the cone; restrict the cone to one region where w > 0");
}

double Weight::curvature() const {
  if (!impl_->curvature) throw Error(ErrorCode::inadmissible_weight, impl_->reason);
  return *impl_->curvature;
}

const CurvatureCertificate& Weight::certificate() const {
  if (!impl_->curvature) throw Error(ErrorCode::inadmissible_weight, impl_->reason);
  return impl_->certificate;
}

double Weight::value(const Vec& x) const {
  if (!cone().contains(x)) raise(ErrorCode::domain, "point lies outside the closure of the cone");
  double v = value_spec(spec(), x);
  if (!std::isfinite(v)) raise(ErrorCode::evaluation, "weight value is not finite");
  return v;
}

double Weight::log_value(const Vec& x) const {
  if (!cone().contains(x)) raise(ErrorCode::domain, "point lies outside the closure of the cone");
  return log_value_spec(spec(), x);
}

Vec Weight::grad_log(const Vec& x) const {
  if (!cone().contains(x)) raise(ErrorCode::domain, "point lies outside the closure of the cone");
  return grad_spec(spec(), x);
}

Mat Weight::hess_log(const Vec& x) const {
  if (!cone().contains(x)) raise(ErrorCode::domain, "point lies outside the closure of the cone");
  return hess_spec(spec(), x);
}

double eval_weight(const Weight& w, const Vec& x) { return w.value(x); }
Vec grad_log_weight(const Weight& w, const Vec& x) { return w.grad_log(x); }
Mat hess_log_weight(const Weight& w, const Vec& x) { return w.hess_log(x); }

CurvatureBound curvature_lower_bound(const Weight& w, const CurvatureSampler& sampler) {
  auto k = analytic_curvature(w.spec(), w.dim());
  if (k) return CurvatureBound{*k, CurvatureCertificate{true, 0, *k, Vec()}};
  return sampled_curvature(w, sampler);
}

double euler_residual(const Weight& w, const Vec& x) {
  if (!w.degree()) raise(ErrorCode::not_homogeneous, "weight has no homogeneity degree");
  double v = w.value(x);
  return v * (x.dot(w.grad_log(x)) - *w.degree());
}

Vec boundary_normal(const Cone& cone, const Vec& x) { return cone.boundary_normal(x); }

}  // namespace wgauss
