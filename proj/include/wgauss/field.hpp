/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wgauss/cone.hpp"
#include "wgauss/types.hpp"
#include "wgauss/weight.hpp"

namespace wgauss {

enum class Sym : std::uint8_t { none, even, odd };

Sym sym_product(Sym a, Sym b);

// Growth class of a field at infinity. gaussian means |f| <= C e^{-rate |x|^2}
// up to polynomial factors; exponential means at most e^{b.x}.
struct Envelope {
  enum class Kind { gaussian, polynomial, exponential, none };
  Kind kind = Kind::none;
  double rate = 0.0;

  static Envelope gaussian(double rate) { return {Kind::gaussian, rate}; }
  static Envelope polynomial() { return {Kind::polynomial, 0.0}; }
  static Envelope exponential() { return {Kind::exponential, 0.0}; }
  static Envelope none() { return {Kind::none, 0.0}; }
  bool decays() const { return kind == Kind::gaussian && rate > 0; }
};

Envelope envelope_product(const Envelope& a, const Envelope& b);
Envelope envelope_sum(const Envelope& a, const Envelope& b);
Envelope envelope_power(const Envelope& a, double q);  // |f|^q
std::string to_string(const Envelope& e);

struct Monom {
  double coef = 0.0;
  std::array<int, kMaxDim> pow{};
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int dim, std::vector<Monom> terms);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Monom>& terms() const { return terms_; }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  Sym parity(int axis) const;

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::vector<Monom> terms_;
};

class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  using HessFn = std::function<Mat(const Vec&)>;

  ScalarField(int dim, std::string name, ValueFn value, GradFn grad, HessFn hess, Envelope env,
              std::vector<Sym> parity, bool radial = false);

  int dim() const { return impl_->dim; }
  const std::string& name() const { return impl_->name; }
  double value(const Vec& x) const { return impl_->value(x); }
  Vec gradient(const Vec& x) const { return impl_->grad(x); }
  Mat hessian(const Vec& x) const { return impl_->hess(x); }
  double laplacian(const Vec& x) const { return impl_->hess(x).trace(); }
  const Envelope& envelope() const { return impl_->env; }
  Sym parity(int axis) const { return impl_->parity[axis]; }
  const std::vector<Sym>& parities() const { return impl_->parity; }
  bool radial() const { return impl_->radial; }
  bool even_in_all(const std::vector<int>& axes) const;

  ScalarField renamed(std::string name) const;

 private:
  struct Impl {
    int dim;
    std::string name;
    ValueFn value;
    GradFn grad;
    HessFn hess;
    Envelope env;
    std::vector<Sym> parity;
    bool radial;
  };
  std::shared_ptr<const Impl> impl_;
};

// Canonical field library.
namespace fields {

ScalarField constant(int dim, double c);
ScalarField affine(const Vec& a, double b);
ScalarField exp_axis(int dim, double b, int axis);
ScalarField hermite_witness(int dim, int axis);
ScalarField gaussian(int dim, double amplitude, double lambda);
ScalarField gaussian_quarter(int dim, double amplitude);
// Random polynomial of total degree <= degree (standard normal coefficients,
// seeded) times exp(-rate |x|^2). Axes in even_axes only get even powers.
ScalarField poly_gauss(int dim, std::uint64_t seed, int degree = 3, double rate = 0.25,
                       const std::vector<int>& even_axes = {});
ScalarField polynomial(const Polynomial& p, std::string name = "polynomial");

// f(x / s)
ScalarField scale_argument(const ScalarField& f, double s);
ScalarField scale_value(const ScalarField& f, double a);
ScalarField add_constant(const ScalarField& f, double c);
ScalarField negate(const ScalarField& f);
ScalarField product(const ScalarField& f, const ScalarField& g);
ScalarField sum(const ScalarField& f, const ScalarField& g);
// lambda^{m/2} f(lambda x): preserves the L^2(w dx) norm when w has degree m - n.
ScalarField mass_rescale(const ScalarField& f, double lambda, double m);

}  // namespace fields

}  // namespace wgauss
