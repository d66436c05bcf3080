/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/cone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgauss {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    raise(ErrorCode::parameter, "dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                                    std::to_string(dim));
}

}  // namespace

Cone Cone::full_space(int dim) {
  check_dim(dim);
  Cone c;
  c.kind_ = Kind::full_space;
  c.dim_ = dim;
  return c;
}

Cone Cone::orthant(int dim, std::vector<int> axes) {
  check_dim(dim);
  std::sort(axes.begin(), axes.end());
  if (std::adjacent_find(axes.begin(), axes.end()) != axes.end())
    raise(ErrorCode::parameter, "orthant axes repeat");
  Cone c;
  c.kind_ = Kind::orthant;
  c.dim_ = dim;
  for (int k : axes) {
    if (k < 0 || k >= dim) raise(ErrorCode::parameter, "orthant axis out of range: " + std::to_string(k));
    Vec nu = Vec::Zero(dim);
    nu(k) = 1.0;
    c.facets_.push_back(nu);
  }
  c.axes_ = std::move(axes);
  return c;
}

Cone Cone::halfspace(const Vec& normal) {
  check_dim(static_cast<int>(normal.size()));
  double len = normal.norm();
  if (!(len > 0) || !std::isfinite(len)) raise(ErrorCode::parameter, "halfspace normal must be nonzero");
  Cone c;
  c.kind_ = Kind::halfspace;
  c.dim_ = static_cast<int>(normal.size());
  c.facets_.push_back(normal / len);
  return c;
}

Cone Cone::product(const std::vector<Cone>& factors) {
  if (factors.empty()) raise(ErrorCode::parameter, "product cone needs at least one factor");
  int dim = 0;
  for (const auto& f : factors) dim += f.dim();
  check_dim(dim);
  Cone c;
  c.kind_ = Kind::product;
  c.dim_ = dim;
  c.factors_ = factors;
  int offset = 0;
  for (const auto& f : factors) {
    for (const auto& nu : f.facets()) {
      Vec e = Vec::Zero(dim);
      e.segment(offset, f.dim()) = nu;
      c.facets_.push_back(e);
    }
    offset += f.dim();
  }
  return c;
}

bool Cone::contains(const Vec& x) const {
  if (x.size() != dim_) raise(ErrorCode::parameter, "point dimension does not match cone");
  for (const auto& nu : facets_)
    if (x.dot(nu) < -kFacetTolerance) return false;
  return true;
}

bool Cone::interior(const Vec& x) const {
  if (x.size() != dim_) raise(ErrorCode::parameter, "point dimension does not match cone");
  for (const auto& nu : facets_)
    if (x.dot(nu) <= kFacetTolerance) return false;
  return true;
}

Vec Cone::boundary_normal(const Vec& x) const {
  if (!has_boundary()) raise(ErrorCode::no_boundary, "full space has no boundary");
  if (!contains(x)) raise(ErrorCode::domain, "point lies outside the cone");
  int hit = -1;
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (std::abs(x.dot(facets_[i])) <= kFacetTolerance) {
      if (hit >= 0) raise(ErrorCode::ambiguous_normal, "point lies on a ridge of the cone");
      hit = static_cast<int>(i);
    }
  }
  if (hit < 0) raise(ErrorCode::domain, "point is not on the boundary");
  return -facets_[hit];
}

std::optional<std::vector<int>> Cone::axis_signs() const {
  std::vector<int> signs(dim_, 0);
  for (const auto& nu : facets_) {
    int axis = -1;
    for (int k = 0; k < dim_; ++k) {
      if (nu(k) == 0.0) continue;
      if (axis >= 0) return std::nullopt;
      axis = k;
    }
    int s = nu(axis) > 0 ? 1 : -1;
    if (signs[axis] != 0 && signs[axis] != s) return std::nullopt;  // empty cone
    signs[axis] = s;
  }
  return signs;
}

bool Cone::facets_orthogonal() const {
  for (std::size_t i = 0; i < facets_.size(); ++i)
    for (std::size_t j = i + 1; j < facets_.size(); ++j)
      if (std::abs(facets_[i].dot(facets_[j])) > 1e-14) return false;
  return true;
}

Vec Cone::fold(const Vec& x) const {
  if (!facets_orthogonal()) raise(ErrorCode::unsupported, "folding needs mutually orthogonal facets");
  Vec y = x;
  for (const auto& nu : facets_) {
    double t = y.dot(nu);
    if (t < 0) y -= 2.0 * t * nu;
  }
  return y;
}

double Cone::gaussian_mass_fraction() const {
  if (!facets_orthogonal()) raise(ErrorCode::unsupported, "mass fraction needs mutually orthogonal facets");
  return std::ldexp(1.0, -static_cast<int>(facets_.size()));
}

std::vector<Vec> Cone::boundary_sample(int count, std::uint64_t seed) const {
  if (!has_boundary()) raise(ErrorCode::no_boundary, "full space has no boundary");
  if (!facets_orthogonal()) raise(ErrorCode::unsupported, "boundary sampling needs orthogonal facets");
  std::vector<Vec> out;
  out.reserve(count);
  std::uint64_t counter = 0;
  while (static_cast<int>(out.size()) < count) {
    std::size_t facet = out.size() % facets_.size();
    Vec x(dim_);
    for (int k = 0; k < dim_; ++k) x(k) = 2.0 * standard_normal(seed, counter++);
    x -= x.dot(facets_[facet]) * facets_[facet];
    x = fold(x);
    bool clear = true;
    for (std::size_t j = 0; j < facets_.size(); ++j)
      if (j != facet && x.dot(facets_[j]) < 1e-6) clear = false;
    if (clear) out.push_back(x);
  }
  return out;
}

}  // namespace wgauss
