/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace wgauss {

namespace {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

std::vector<std::array<int, kMaxDim>> graded_exponents(int n, int d, const std::vector<bool>& even_only) {
  std::vector<std::array<int, kMaxDim>> out;
  std::array<int, kMaxDim> e{};
  for (int total = 0; total <= d; ++total) {
    // lexicographic by decreasing first coordinate
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == n - 1) {
        e[k] = left;
        bool ok = true;
        for (int a = 0; a < n; ++a)
          if (even_only[a] && e[a] % 2) ok = false;
        if (ok) out.push_back(e);
        return;
      }
      for (int j = left; j >= 0; --j) {
        e[k] = j;
        rec(k + 1, left - j);
      }
    };
    rec(0, total);
  }
  return out;
}

}  // namespace

int default_galerkin_degree(int dim) { return dim <= 2 ? 16 : 10; }

std::size_t GalerkinSystem::count_up_to(int d) const {
  return static_cast<std::size_t>(std::count_if(degrees_.begin(), degrees_.end(), [d](int k) { return k <= d; }));
}

GalerkinSystem build_galerkin(const Measure& mu, int max_degree, bool parity_filter) {
  if (!mu.normalized()) raise(ErrorCode::contract, "the Galerkin basis needs a Gaussian probability measure");
  if (max_degree < 0) raise(ErrorCode::parameter, "max degree must be nonnegative");
  const int n = mu.dim();
  const Weight& w = mu.weight();
  require_convex_support(w);

  std::vector<bool> even_only(n, false);
  if (parity_filter && w.cone().has_boundary()) {
    auto signs = w.cone().axis_signs();
    if (!signs) raise(ErrorCode::unsupported, "parity filtering needs an axis-aligned cone");
    for (int k = 0; k < n; ++k) even_only[k] = (*signs)[k] != 0;
  }

  GalerkinSystem sys(mu);
  sys.max_degree_ = max_degree;
  sys.exponents_ = graded_exponents(n, max_degree, even_only);
  const std::size_t B = sys.exponents_.size();
  std::map<std::array<int, kMaxDim>, std::size_t> index;
  for (std::size_t j = 0; j < B; ++j) {
    index[sys.exponents_[j]] = j;
    int d = 0;
    for (int k = 0; k < n; ++k) d += sys.exponents_[j][k];
    sys.degrees_.push_back(d);
  }

  RuleTarget target = mu.target();
  target.order = n <= 2 ? std::max(max_degree + 2, target.order) : max_degree + 2;
  QuadratureRule rule = build_rule(w, target, *mu.scale());
  const Eigen::Index N = static_cast<Eigen::Index>(rule.size());
  sys.nodes_ = rule.nodes;
  sys.node_weights_.resize(N);
  const double total = rule.total_weight();
  for (Eigen::Index i = 0; i < N; ++i) sys.node_weights_(i) = rule.weights[i] / total;
  LVec W = sys.node_weights_.cast<long double>();

  LMat V(N, B), L(N, B), C = LMat::Zero(B, B);
  std::vector<LMat> G(n, LMat(N, B));
  V.col(0).setOnes();
  L.col(0).setZero();
  for (int k = 0; k < n; ++k) G[k].col(0).setZero();
  C(0, 0) = 1;

  for (std::size_t j = 1; j < B; ++j) {
    const auto& e = sys.exponents_[j];
    int a = 0;
    while (e[a] == 0) ++a;
    const int step = even_only[a] ? 2 : 1;
    auto pe = e;
    pe[a] -= step;
    const std::size_t parent = index.at(pe);
    for (Eigen::Index i = 0; i < N; ++i) {
      long double xa = rule.nodes(a, i);
      long double p = V(i, parent), dpa = G[a](i, parent), lap = L(i, parent);
      if (step == 1) {
        V(i, j) = xa * p;
        L(i, j) = 2 * dpa + xa * lap;
        for (int k = 0; k < n; ++k) G[k](i, j) = xa * G[k](i, parent) + (k == a ? p : 0.0L);
      } else {
        V(i, j) = xa * xa * p;
        L(i, j) = 2 * p + 4 * xa * dpa + xa * xa * lap;
        for (int k = 0; k < n; ++k) G[k](i, j) = xa * xa * G[k](i, parent) + (k == a ? 2 * xa * p : 0.0L);
      }
    }
    C.col(j).setZero();
    for (std::size_t m = 0; m < B; ++m) {
      if (C(m, parent) == 0) continue;
      auto me = sys.exponents_[m];
      me[a] += step;
      C(index.at(me), j) += C(m, parent);
    }
    const long double raw = std::sqrt((W.array() * V.col(j).array().square()).sum());
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        long double c = (W.array() * V.col(j).array() * V.col(i).array()).sum();
        V.col(j) -= c * V.col(i);
        L.col(j) -= c * L.col(i);
        for (int k = 0; k < n; ++k) G[k].col(j) -= c * G[k].col(i);
        C.col(j) -= c * C.col(i);
      }
    }
    const long double nrm = std::sqrt((W.array() * V.col(j).array().square()).sum());
    if (!(nrm > 1e-10L * raw))
      raise(ErrorCode::degree_too_high, "Gram matrix is numerically singular at degree " +
                                            std::to_string(sys.degrees_[j]));
    V.col(j) /= nrm;
    L.col(j) /= nrm;
    for (int k = 0; k < n; ++k) G[k].col(j) /= nrm;
    C.col(j) /= nrm;
  }

  sys.values_ = V.cast<double>();
  sys.laplacians_ = L.cast<double>();
  sys.coefficients_ = C.cast<double>();
  sys.grads_.resize(n);
  LMat K = LMat::Zero(B, B);
  for (int k = 0; k < n; ++k) {
    sys.grads_[k] = G[k].cast<double>();
    K += G[k].transpose() * W.asDiagonal() * G[k];
  }
  sys.stiffness_ = K.cast<double>();
  sys.stiffness_ = 0.5 * (sys.stiffness_ + sys.stiffness_.transpose()).eval();
  LMat gram = V.transpose() * W.asDiagonal() * V;
  sys.gram_ = gram.cast<double>();
  sys.gram_residual_ = (sys.gram_ - Eigen::MatrixXd::Identity(B, B)).cwiseAbs().maxCoeff();

  sys.grad_log_w_.resize(N, n);
  for (Eigen::Index i = 0; i < N; ++i) sys.grad_log_w_.row(i) = w.grad_log(rule.node(i)).transpose();
  return sys;
}

Eigen::VectorXd GalerkinSystem::project_values(const Eigen::VectorXd& node_values) const {
  return values_.transpose() * (node_weights_.array() * node_values.array()).matrix();
}

Eigen::VectorXd GalerkinSystem::project(const ScalarField& f) const {
  Eigen::VectorXd fv(nodes_.cols());
  for (Eigen::Index i = 0; i < nodes_.cols(); ++i) {
    fv(i) = f.value(nodes_.col(i));
    if (!std::isfinite(fv(i))) raise(ErrorCode::evaluation, "field is not finite at a node");
  }
  return project_values(fv);
}

ScalarField GalerkinSystem::expand(const Eigen::VectorXd& coef, const std::string& name) const {
  Eigen::VectorXd mono = coefficients_ * coef;
  std::vector<Monom> terms;
  for (std::size_t m = 0; m < exponents_.size(); ++m)
    if (mono(m) != 0) terms.push_back(Monom{mono(m), exponents_[m]});
  return fields::polynomial(Polynomial(dim(), std::move(terms)), name);
}

Eigen::VectorXd GalerkinSystem::expand_values(const Eigen::VectorXd& coef) const { return values_ * coef; }

Eigen::MatrixXd GalerkinSystem::expand_gradients(const Eigen::VectorXd& coef) const {
  Eigen::MatrixXd out(nodes_.cols(), dim());
  for (int k = 0; k < dim(); ++k) out.col(k) = grads_[k] * coef;
  return out;
}

Eigen::VectorXd GalerkinSystem::expand_generator(const Eigen::VectorXd& coef) const {
  Eigen::MatrixXd g = expand_gradients(coef);
  Eigen::VectorXd out = laplacians_ * coef;
  for (int k = 0; k < dim(); ++k)
    out.array() += (grad_log_w_.col(k).array() - nodes_.row(k).transpose().array()) * g.col(k).array();
  return out;
}

SpectralResult spectral_gap(const GalerkinSystem& sys) {
  const Eigen::Index B = static_cast<Eigen::Index>(sys.size());
  if (B < 2) raise(ErrorCode::parameter, "spectral gap needs a basis beyond the constant");
  auto solve = [&](Eigen::Index m, Eigen::MatrixXd* vecs) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        sys.stiffness().topLeftCorner(m, m), sys.gram().topLeftCorner(m, m),
        vecs ? Eigen::ComputeEigenvectors | Eigen::Ax_lBx : Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) raise(ErrorCode::integration_failure, "generalized eigensolve failed");
    if (vecs) *vecs = es.eigenvectors();
    return Eigen::VectorXd(es.eigenvalues());
  };
  SpectralResult r;
  r.degree = sys.max_degree();
  Eigen::VectorXd ev = solve(B, &r.eigenvectors);
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  r.gap = r.eigenvalues[1];
  const Eigen::Index prev = static_cast<Eigen::Index>(sys.count_up_to(sys.max_degree() - 2));
  if (prev >= 2) {
    r.gap_previous = solve(prev, nullptr)(1);
    r.convergence_delta = std::abs(r.gap - r.gap_previous);
  } else {
    r.gap_previous = r.gap;
    r.convergence_delta = std::numeric_limits<double>::infinity();
  }
  r.unconverged = !(r.convergence_delta <= 1e-4 * r.gap);
  return r;
}

PoissonSolution poisson_solve(const GalerkinSystem& sys, const ScalarField& f) {
  Eigen::VectorXd b = sys.project(f);
  if (std::abs(b(0)) > 1e-8)
    raise(ErrorCode::mean_zero_violation, "right-hand side has mean " + std::to_string(b(0)));
  const Eigen::Index B = b.size();
  PoissonSolution s;
  s.coef = Eigen::VectorXd::Zero(B);
  s.coef.tail(B - 1) = sys.stiffness().bottomRightCorner(B - 1, B - 1).ldlt().solve(b.tail(B - 1));
  Eigen::VectorXd lu = sys.expand_generator(s.coef);
  double acc = 0;
  for (Eigen::Index i = 0; i < sys.nodes().cols(); ++i) {
    double r = -lu(i) - f.value(sys.nodes().col(i));
    acc += sys.node_weights()(i) * r * r;
  }
  s.residual = std::sqrt(acc);
  s.mean = sys.node_weights().dot(sys.expand_values(s.coef));
  return s;
}

InequalityCheck duality_stability_residual(const GalerkinSystem& sys, const ScalarField& f, const Tolerance& tol) {
  PoissonSolution u = poisson_solve(sys, f);
  const double c = 1.0 + sys.measure().weight().curvature();
  Eigen::MatrixXd gu = sys.expand_gradients(u.coef);
  double energy = 0, l2 = 0, middle = 0;
  for (Eigen::Index i = 0; i < sys.nodes().cols(); ++i) {
    Vec x = sys.nodes().col(i);
    Vec gf = f.gradient(x);
    double fv = f.value(x);
    double wi = sys.node_weights()(i);
    Vec gui = gu.row(i).transpose();
    energy += wi * gf.squaredNorm();
    l2 += wi * fv * fv;
    middle += wi * (c * gui - gf).squaredNorm();
  }
  auto chk = make_check("duality", f.name(), std::nullopt, 2.0, middle, energy - c * l2, c, tol);
  chk.diagnostics = {{"energy", energy},
                     {"l2", l2},
                     {"middle", middle},
                     {"middle_nonnegative", middle >= 0 ? 1.0 : 0.0},
                     {"poisson_residual", u.residual}};
  return chk;
}

Eigen::VectorXd semigroup_apply(const GalerkinSystem& sys, const SpectralResult& spec, const Eigen::VectorXd& coef,
                                double t) {
  if (!(t >= 0)) raise(ErrorCode::parameter, "semigroup time must be nonnegative");
  const Eigen::MatrixXd& V = spec.eigenvectors;
  Eigen::VectorXd modal = V.transpose() * (sys.gram() * coef);
  for (Eigen::Index k = 0; k < modal.size(); ++k) modal(k) *= std::exp(-std::max(spec.eigenvalues[k], 0.0) * t);
  return V * modal;
}

ScalarField semigroup_apply(const GalerkinSystem& sys, const SpectralResult& spec, const ScalarField& f, double t) {
  Eigen::VectorXd a = sys.gram().ldlt().solve(sys.project(f));
  return sys.expand(semigroup_apply(sys, spec, a, t), "P_t " + f.name());
}

DecayTable semigroup_decay_check(const GalerkinSystem& sys, const SpectralResult& spec, const ScalarField& f,
                                 double p, double q, const std::vector<double>& grid, bool allow_shift) {
  if (!(p >= 1) || !(p < q)) raise(ErrorCode::parameter, "decay check needs 1 <= p < q");
  if (grid.size() < 2) raise(ErrorCode::parameter, "decay check needs at least two times");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) raise(ErrorCode::parameter, "time grid must increase");
  const Eigen::Index N = sys.nodes().cols();
  const Eigen::VectorXd& W = sys.node_weights();
  const double rho = 1.0 + sys.measure().weight().curvature();

  Eigen::VectorXd fv(N);
  Eigen::MatrixXd gf(N, sys.dim());
  for (Eigen::Index i = 0; i < N; ++i) {
    Vec x = sys.nodes().col(i);
    fv(i) = f.value(x);
    gf.row(i) = f.gradient(x).transpose();
  }
  DecayTable out;
  out.p = p;
  out.q = q;
  const double fmin = fv.minCoeff();
  if (fmin <= 0) {
    if (!allow_shift) raise(ErrorCode::domain, "decay check needs a positive field");
    out.shift = -fmin + 1e-6;
    fv.array() += out.shift;
  }
  Eigen::VectorXd g = fv.array().pow(p).matrix();
  Eigen::VectorXd a = sys.gram().ldlt().solve(sys.project_values(g));
  double grad_q = 0;
  for (Eigen::Index i = 0; i < N; ++i) grad_q += W(i) * std::pow(gf.row(i).squaredNorm(), 0.5 * q);
  const double grad_norm_sq = std::pow(grad_q, 2.0 / q);
  const double norm_q_sq = std::pow(W.dot(fv.array().pow(q).matrix()), 2.0 / q);
  out.norm_p_sq = std::pow(W.dot(g), 2.0 / p);
  out.phi_limit = out.norm_p_sq;

  std::vector<double> phi;
  for (double t : grid) {
    Eigen::VectorXd vals = sys.expand_values(semigroup_apply(sys, spec, a, t));
    phi.push_back(std::pow(W.dot(vals.array().abs().pow(q / p).matrix()), 2.0 / q));
  }
  out.phi0_vs_norm_q = std::abs(phi.front() - norm_q_sq) / norm_q_sq;
  out.pass = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    DecayRow r;
    r.t = grid[i];
    r.phi = phi[i];
    if (i + 1 < grid.size()) {
      r.quotient = -(phi[i + 1] - phi[i]) / (grid[i + 1] - grid[i]);
      r.bound = 2.0 * std::exp(-2.0 * rho * grid[i]) * (q - p) * grad_norm_sq * (1.0 + 1e-3);
      r.decreasing = phi[i + 1] < phi[i];
      r.bounded = r.quotient <= r.bound;
      out.pass = out.pass && r.decreasing && r.bounded;
    }
    out.rows.push_back(r);
  }

  if (q == 2 && (p == 1 || p == 1.5)) {
    // |grad P_t g|^2 <= e^{-2 rho t} (P_t |grad g|)^2 at the nodes
    Eigen::VectorXd abs_grad(N);
    for (Eigen::Index i = 0; i < N; ++i) abs_grad(i) = p * std::pow(fv(i), p - 1) * gf.row(i).norm();
    Eigen::VectorXd b = sys.gram().ldlt().solve(sys.project_values(abs_grad));
    // Polynomial projections are meaningless far in the tail, so only nodes
    // within a few standard radii of the origin are compared.
    const double bulk = std::sqrt(sys.nodes().rows() + sys.measure().weight().degree().value_or(0.0)) + 2.0;
    double worst = 0;
    for (double t : grid) {
      Eigen::MatrixXd gp = sys.expand_gradients(semigroup_apply(sys, spec, a, t));
      Eigen::VectorXd pb = sys.expand_values(semigroup_apply(sys, spec, b, t));
      for (Eigen::Index i = 0; i < N; ++i) {
        if (sys.nodes().col(i).norm() > bulk) continue;
        double lhs = gp.row(i).squaredNorm(), rhs = std::exp(-2 * rho * t) * pb(i) * pb(i);
        worst = std::max(worst, (lhs - rhs) / (1.0 + rhs));
      }
    }
    out.gradient_bound_violation = worst;
  }
  return out;
}

}  // namespace wgauss
