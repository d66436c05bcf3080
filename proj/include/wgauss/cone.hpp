/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "wgauss/types.hpp"

namespace wgauss {

// Facet coordinates closer to zero than this count as on the facet.
inline constexpr double kFacetTolerance = 1e-12;

// Convex cone with vertex at the origin, stored as an intersection of open
// halfspaces {x : x.nu > 0} with unit inward normals nu.
class Cone {
 public:
  enum class Kind { full_space, orthant, halfspace, product };

  static Cone full_space(int dim);
  // axes are 0-based; the cone is {x_k > 0 for k in axes}
  static Cone orthant(int dim, std::vector<int> axes);
  // {x : x.normal > 0}; normal need not be unit length
  static Cone halfspace(const Vec& normal);
  // factor coordinates are concatenated in order
  static Cone product(const std::vector<Cone>& factors);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Vec>& facets() const { return facets_; }
  const std::vector<int>& orthant_axes() const { return axes_; }
  const std::vector<Cone>& factors() const { return factors_; }

  bool has_boundary() const { return !facets_.empty(); }
  bool contains(const Vec& x) const;  // closure
  bool interior(const Vec& x) const;

  // Outward unit normal at a point of a single smooth facet.
  Vec boundary_normal(const Vec& x) const;

  // Per-axis restriction: +1 (x_k > 0), -1 (x_k < 0), 0 (free). Empty when
  // some facet is not aligned with a coordinate axis.
  std::optional<std::vector<int>> axis_signs() const;
  bool facets_orthogonal() const;

  // Reflect x across violated facets; requires mutually orthogonal facets.
  Vec fold(const Vec& x) const;
  // Fraction of a centred isotropic Gaussian that lies in the cone.
  double gaussian_mass_fraction() const;

  // Points on smooth parts of the boundary, away from ridges.
  std::vector<Vec> boundary_sample(int count, std::uint64_t seed) const;

 private:
  Kind kind_ = Kind::full_space;
  int dim_ = 0;
  std::vector<Vec> facets_;
  std::vector<int> axes_;
  std::vector<Cone> factors_;
};

}  // namespace wgauss
