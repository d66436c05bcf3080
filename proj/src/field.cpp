/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wgauss {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<Sym> all_even(int dim) { return std::vector<Sym>(dim, Sym::even); }

void check_field_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) raise(ErrorCode::parameter, "field dimension out of range");
}

void check_axis(int dim, int axis) {
  if (axis < 0 || axis >= dim) raise(ErrorCode::parameter, "field axis out of range");
}

}  // namespace

Sym sym_product(Sym a, Sym b) {
  if (a == Sym::none || b == Sym::none) return Sym::none;
  return a == b ? Sym::even : Sym::odd;
}

Envelope envelope_product(const Envelope& a, const Envelope& b) {
  using K = Envelope::Kind;
  if (a.kind == K::none || b.kind == K::none) return Envelope::none();
  if (a.kind == K::gaussian && b.kind == K::gaussian) return Envelope::gaussian(a.rate + b.rate);
  if (a.kind == K::gaussian) return a;
  if (b.kind == K::gaussian) return b;
  if (a.kind == K::exponential || b.kind == K::exponential) return Envelope::exponential();
  return Envelope::polynomial();
}

Envelope envelope_sum(const Envelope& a, const Envelope& b) {
  using K = Envelope::Kind;
  if (a.kind == K::none || b.kind == K::none) return Envelope::none();
  if (a.kind == K::gaussian && b.kind == K::gaussian) return Envelope::gaussian(std::min(a.rate, b.rate));
  if (a.kind == K::exponential || b.kind == K::exponential) return Envelope::exponential();
  return Envelope::polynomial();
}

Envelope envelope_power(const Envelope& a, double q) {
  if (a.kind == Envelope::Kind::gaussian) return Envelope::gaussian(q * a.rate);
  return a;
}

std::string to_string(const Envelope& e) {
  switch (e.kind) {
    case Envelope::Kind::gaussian: return "gaussian(" + num(e.rate) + ")";
    case Envelope::Kind::polynomial: return "polynomial";
    case Envelope::Kind::exponential: return "exponential";
    case Envelope::Kind::none: return "none";
  }
  return "none";
}

Polynomial::Polynomial(int dim, std::vector<Monom> terms) : dim_(dim), terms_(std::move(terms)) {
  check_field_dim(dim);
  for (const auto& t : terms_) {
    int d = 0;
    for (int k = 0; k < dim_; ++k) {
      if (t.pow[k] < 0) raise(ErrorCode::parameter, "negative polynomial exponent");
      d += t.pow[k];
    }
    for (int k = dim_; k < kMaxDim; ++k)
      if (t.pow[k] != 0) raise(ErrorCode::parameter, "polynomial exponent beyond field dimension");
    degree_ = std::max(degree_, d);
  }
}

namespace {

// powers[k][j] = x_k^j
struct PowerTable {
  std::array<std::vector<double>, kMaxDim> p;
  PowerTable(const Vec& x, int degree) {
    for (int k = 0; k < x.size(); ++k) {
      p[k].assign(degree + 1, 1.0);
      for (int j = 1; j <= degree; ++j) p[k][j] = p[k][j - 1] * x(k);
    }
  }
  double get(int k, int j) const { return j < 0 ? 0.0 : p[k][j]; }
};

}  // namespace

double Polynomial::value(const Vec& x) const {
  PowerTable pt(x, degree_);
  double s = 0;
  for (const auto& t : terms_) {
    double v = t.coef;
    for (int k = 0; k < dim_; ++k) v *= pt.get(k, t.pow[k]);
    s += v;
  }
  return s;
}

Vec Polynomial::gradient(const Vec& x) const {
  PowerTable pt(x, degree_);
  Vec g = Vec::Zero(dim_);
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (t.pow[i] == 0) continue;
      double v = t.coef * t.pow[i];
      for (int k = 0; k < dim_; ++k) v *= pt.get(k, k == i ? t.pow[k] - 1 : t.pow[k]);
      g(i) += v;
    }
  }
  return g;
}

Mat Polynomial::hessian(const Vec& x) const {
  PowerTable pt(x, degree_);
  Mat h = Mat::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j) {
        std::array<int, kMaxDim> e = t.pow;
        double c = t.coef * e[i];
        --e[i];
        c *= e[j];
        --e[j];
        if (c == 0) continue;
        for (int k = 0; k < dim_; ++k) c *= pt.get(k, e[k]);
        h(i, j) += c;
      }
    }
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = h(j, i);
  return h;
}

Sym Polynomial::parity(int axis) const {
  bool even = true, odd = true;
  for (const auto& t : terms_) {
    if (t.coef == 0) continue;
    if (t.pow[axis] % 2 == 0)
      odd = false;
    else
      even = false;
  }
  if (even) return Sym::even;
  return odd ? Sym::odd : Sym::none;
}

ScalarField::ScalarField(int dim, std::string name, ValueFn value, GradFn grad, HessFn hess, Envelope env,
                         std::vector<Sym> parity, bool radial) {
  check_field_dim(dim);
  if (static_cast<int>(parity.size()) != dim) raise(ErrorCode::parameter, "parity tags must match dimension");
  impl_ = std::make_shared<const Impl>(Impl{dim, std::move(name), std::move(value), std::move(grad), std::move(hess),
                                            env, std::move(parity), radial});
}

bool ScalarField::even_in_all(const std::vector<int>& axes) const {
  return std::all_of(axes.begin(), axes.end(), [&](int k) { return impl_->parity[k] == Sym::even; });
}

ScalarField ScalarField::renamed(std::string name) const {
  ScalarField f = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  f.impl_ = impl;
  return f;
}

namespace fields {

ScalarField constant(int dim, double c) {
  check_field_dim(dim);
  return ScalarField(
      dim, "constant(" + num(c) + ")", [c](const Vec&) { return c; },
      [dim](const Vec&) { return Vec(Vec::Zero(dim)); }, [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); },
      Envelope::polynomial(), all_even(dim), true);
}

ScalarField affine(const Vec& a, double b) {
  const int dim = static_cast<int>(a.size());
  check_field_dim(dim);
  std::vector<Sym> par(dim, Sym::none);
  int nonzero = 0;
  for (int k = 0; k < dim; ++k) nonzero += a(k) != 0;
  for (int k = 0; k < dim; ++k) {
    if (a(k) == 0)
      par[k] = Sym::even;
    else if (b == 0 && nonzero == 1)
      par[k] = Sym::odd;
  }
  std::string name = "affine(a=[";
  for (int k = 0; k < dim; ++k) name += (k ? "," : "") + num(a(k));
  name += "],b=" + num(b) + ")";
  return ScalarField(
      dim, name, [a, b](const Vec& x) { return a.dot(x) + b; }, [a](const Vec&) { return a; },
      [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); }, Envelope::polynomial(), par, nonzero == 0);
}

ScalarField exp_axis(int dim, double b, int axis) {
  check_field_dim(dim);
  check_axis(dim, axis);
  std::vector<Sym> par = all_even(dim);
  if (b != 0) par[axis] = Sym::none;
  return ScalarField(
      dim, "exp_axis(b=" + num(b) + ",axis=" + std::to_string(axis) + ")",
      [b, axis](const Vec& x) { return std::exp(b * x(axis)); },
      [dim, b, axis](const Vec& x) {
        Vec g = Vec::Zero(dim);
        g(axis) = b * std::exp(b * x(axis));
        return g;
      },
      [dim, b, axis](const Vec& x) {
        Mat h = Mat::Zero(dim, dim);
        h(axis, axis) = b * b * std::exp(b * x(axis));
        return h;
      },
      b == 0 ? Envelope::polynomial() : Envelope::exponential(), par, b == 0);
}

ScalarField hermite_witness(int dim, int axis) {
  check_field_dim(dim);
  check_axis(dim, axis);
  std::vector<Sym> par = all_even(dim);
  par[axis] = Sym::odd;
  return ScalarField(
      dim, "hermite_witness(axis=" + std::to_string(axis) + ")",
      [axis](const Vec& x) { return x(axis) * std::exp(-0.5 * x.squaredNorm()); },
      [dim, axis](const Vec& x) {
        double g = std::exp(-0.5 * x.squaredNorm());
        Vec out = -x(axis) * g * x;
        out(axis) += g;
        return out;
      },
      [dim, axis](const Vec& x) {
        double g = std::exp(-0.5 * x.squaredNorm());
        Mat h = x(axis) * (x * x.transpose() - Mat::Identity(dim, dim));
        for (int i = 0; i < dim; ++i) {
          h(i, axis) -= x(i);
          h(axis, i) -= x(i);
        }
        return Mat(g * h);
      },
      Envelope::gaussian(0.5), par, false);
}

ScalarField gaussian(int dim, double amplitude, double lambda) {
  check_field_dim(dim);
  if (!(lambda > 0)) raise(ErrorCode::parameter, "gaussian scale must be positive");
  const double c = 1.0 / (lambda * lambda);
  return ScalarField(
      dim, "gaussian(A=" + num(amplitude) + ",lambda=" + num(lambda) + ")",
      [amplitude, c](const Vec& x) { return amplitude * std::exp(-0.5 * c * x.squaredNorm()); },
      [amplitude, c](const Vec& x) { return Vec(-amplitude * c * std::exp(-0.5 * c * x.squaredNorm()) * x); },
      [dim, amplitude, c](const Vec& x) {
        double g = amplitude * std::exp(-0.5 * c * x.squaredNorm());
        return Mat(g * (c * c * x * x.transpose() - c * Mat::Identity(dim, dim)));
      },
      Envelope::gaussian(0.5 * c), all_even(dim), true);
}

ScalarField gaussian_quarter(int dim, double amplitude) {
  return gaussian(dim, amplitude, std::sqrt(2.0)).renamed("gaussian_quarter(A=" + num(amplitude) + ")");
}

ScalarField poly_gauss(int dim, std::uint64_t seed, int degree, double rate, const std::vector<int>& even_axes) {
  check_field_dim(dim);
  if (degree < 0) raise(ErrorCode::parameter, "poly_gauss degree must be nonnegative");
  if (!(rate > 0)) raise(ErrorCode::parameter, "poly_gauss rate must be positive");
  for (int k : even_axes) check_axis(dim, k);
  std::vector<Monom> terms;
  std::array<int, kMaxDim> e{};
  std::uint64_t counter = 0;
  // enumerate multi-indices with total degree <= degree in lexicographic order
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == dim) {
      for (int a : even_axes)
        if (e[a] % 2) return;
      Monom m;
      m.pow = e;
      m.coef = standard_normal(seed, counter++);
      terms.push_back(m);
      return;
    }
    for (int j = 0; j <= left; ++j) {
      e[k] = j;
      rec(k + 1, left - j);
    }
    e[k] = 0;
  };
  rec(0, degree);
  Polynomial p(dim, std::move(terms));
  std::vector<Sym> par(dim);
  for (int k = 0; k < dim; ++k) par[k] = p.parity(k);
  return ScalarField(
      dim, "poly_gauss(seed=" + std::to_string(seed) + ",degree=" + std::to_string(degree) + ",rate=" + num(rate) + ")",
      [p, rate](const Vec& x) { return p.value(x) * std::exp(-rate * x.squaredNorm()); },
      [p, rate](const Vec& x) {
        double g = std::exp(-rate * x.squaredNorm());
        return Vec(g * (p.gradient(x) - 2 * rate * p.value(x) * x));
      },
      [p, rate, dim](const Vec& x) {
        double g = std::exp(-rate * x.squaredNorm());
        double v = p.value(x);
        Vec gp = p.gradient(x);
        Mat h = p.hessian(x) - 2 * rate * (gp * x.transpose() + x * gp.transpose()) -
                2 * rate * v * Mat::Identity(dim, dim) + 4 * rate * rate * v * x * x.transpose();
        return Mat(g * h);
      },
      Envelope::gaussian(rate), par, false);
}

ScalarField polynomial(const Polynomial& p, std::string name) {
  std::vector<Sym> par(p.dim());
  for (int k = 0; k < p.dim(); ++k) par[k] = p.parity(k);
  return ScalarField(
      p.dim(), std::move(name), [p](const Vec& x) { return p.value(x); },
      [p](const Vec& x) { return p.gradient(x); }, [p](const Vec& x) { return p.hessian(x); },
      Envelope::polynomial(), par, p.degree() == 0);
}

ScalarField scale_argument(const ScalarField& f, double s) {
  if (!(s > 0)) raise(ErrorCode::parameter, "argument scale must be positive");
  Envelope env = f.envelope();
  if (env.kind == Envelope::Kind::gaussian) env.rate /= s * s;
  return ScalarField(
      f.dim(), f.name() + "(x/" + num(s) + ")", [f, s](const Vec& x) { return f.value(x / s); },
      [f, s](const Vec& x) { return Vec(f.gradient(x / s) / s); },
      [f, s](const Vec& x) { return Mat(f.hessian(x / s) / (s * s)); }, env, f.parities(), f.radial());
}

ScalarField scale_value(const ScalarField& f, double a) {
  std::vector<Sym> par = f.parities();
  if (a == 0) par.assign(f.dim(), Sym::even);
  return ScalarField(
      f.dim(), num(a) + "*" + f.name(), [f, a](const Vec& x) { return a * f.value(x); },
      [f, a](const Vec& x) { return Vec(a * f.gradient(x)); }, [f, a](const Vec& x) { return Mat(a * f.hessian(x)); },
      a == 0 ? Envelope::gaussian(1.0) : f.envelope(), par, f.radial());
}

ScalarField add_constant(const ScalarField& f, double c) {
  std::vector<Sym> par = f.parities();
  if (c != 0)
    for (auto& s : par)
      if (s == Sym::odd) s = Sym::none;
  return ScalarField(
      f.dim(), f.name() + "+" + num(c), [f, c](const Vec& x) { return f.value(x) + c; },
      [f](const Vec& x) { return f.gradient(x); }, [f](const Vec& x) { return f.hessian(x); },
      c == 0 ? f.envelope() : envelope_sum(f.envelope(), Envelope::polynomial()), par, f.radial());
}

ScalarField negate(const ScalarField& f) { return scale_value(f, -1.0).renamed("-" + f.name()); }

ScalarField product(const ScalarField& f, const ScalarField& g) {
  if (f.dim() != g.dim()) raise(ErrorCode::parameter, "field dimensions differ");
  std::vector<Sym> par(f.dim());
  for (int k = 0; k < f.dim(); ++k) par[k] = sym_product(f.parity(k), g.parity(k));
  return ScalarField(
      f.dim(), f.name() + "*" + g.name(), [f, g](const Vec& x) { return f.value(x) * g.value(x); },
      [f, g](const Vec& x) { return Vec(f.value(x) * g.gradient(x) + g.value(x) * f.gradient(x)); },
      [f, g](const Vec& x) {
        Vec df = f.gradient(x), dg = g.gradient(x);
        return Mat(f.value(x) * g.hessian(x) + g.value(x) * f.hessian(x) + df * dg.transpose() +
                   dg * df.transpose());
      },
      envelope_product(f.envelope(), g.envelope()), par, f.radial() && g.radial());
}

ScalarField sum(const ScalarField& f, const ScalarField& g) {
  if (f.dim() != g.dim()) raise(ErrorCode::parameter, "field dimensions differ");
  std::vector<Sym> par(f.dim());
  for (int k = 0; k < f.dim(); ++k) par[k] = f.parity(k) == g.parity(k) ? f.parity(k) : Sym::none;
  return ScalarField(
      f.dim(), f.name() + "+" + g.name(), [f, g](const Vec& x) { return f.value(x) + g.value(x); },
      [f, g](const Vec& x) { return Vec(f.gradient(x) + g.gradient(x)); },
      [f, g](const Vec& x) { return Mat(f.hessian(x) + g.hessian(x)); }, envelope_sum(f.envelope(), g.envelope()),
      par, f.radial() && g.radial());
}

ScalarField mass_rescale(const ScalarField& f, double lambda, double m) {
  if (!(lambda > 0)) raise(ErrorCode::parameter, "rescaling factor must be positive");
  return scale_value(scale_argument(f, 1.0 / lambda), std::pow(lambda, 0.5 * m))
      .renamed(f.name() + "_rescaled(" + num(lambda) + ")");
}

}  // namespace fields

}  // namespace wgauss
