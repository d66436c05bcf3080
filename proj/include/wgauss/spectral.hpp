/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wgauss/inequality.hpp"

namespace wgauss {

// Polynomial basis orthonormal under mu_w, graded by total degree, with all
// values, gradients and Laplacians tabulated at the nodes of its own rule.
class GalerkinSystem {
 public:
  const Measure& measure() const { return measure_; }
  int dim() const { return measure_.dim(); }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return exponents_.size(); }
  const std::vector<std::array<int, kMaxDim>>& exponents() const { return exponents_; }
  const std::vector<int>& degrees() const { return degrees_; }
  // number of leading elements with total degree <= d
  std::size_t count_up_to(int d) const;

  const Eigen::MatrixXd& stiffness() const { return stiffness_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  double orthonormality_residual() const { return gram_residual_; }

  // Rule used for assembly and projection (normalized weights).
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& node_weights() const { return node_weights_; }
  const Eigen::MatrixXd& values() const { return values_; }  // nodes x basis

  // <f, p_j> for every basis element
  Eigen::VectorXd project(const ScalarField& f) const;
  Eigen::VectorXd project_values(const Eigen::VectorXd& node_values) const;
  // Polynomial sum_j c_j p_j as a field.
  ScalarField expand(const Eigen::VectorXd& coef, const std::string& name = "galerkin") const;
  // Node values, gradients, and generator applied to sum_j c_j p_j.
  Eigen::VectorXd expand_values(const Eigen::VectorXd& coef) const;
  Eigen::VectorXd expand_generator(const Eigen::VectorXd& coef) const;
  Eigen::MatrixXd expand_gradients(const Eigen::VectorXd& coef) const;  // nodes x dim

 private:
  friend GalerkinSystem build_galerkin(const Measure& mu, int max_degree, bool parity_filter);
  explicit GalerkinSystem(Measure mu) : measure_(std::move(mu)) {}

  Measure measure_;
  int max_degree_ = 0;
  std::vector<std::array<int, kMaxDim>> exponents_;
  std::vector<int> degrees_;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd node_weights_;
  Eigen::MatrixXd values_;
  std::vector<Eigen::MatrixXd> grads_;
  Eigen::MatrixXd laplacians_;
  Eigen::MatrixXd grad_log_w_;  // nodes x dim
  Eigen::MatrixXd coefficients_;  // monomial (same ordering as exponents_) x basis
  Eigen::MatrixXd stiffness_;
  Eigen::MatrixXd gram_;
  double gram_residual_ = 0.0;
};

// Default basis degree for a dimension.
int default_galerkin_degree(int dim);

GalerkinSystem build_galerkin(const Measure& mu, int max_degree, bool parity_filter = true);

struct SpectralResult {
  std::vector<double> eigenvalues;
  double gap = 0.0;
  Eigen::MatrixXd eigenvectors;  // basis coordinates, gram-orthonormal
  int degree = 0;
  double gap_previous = 0.0;  // at degree - 2
  double convergence_delta = 0.0;
  bool unconverged = false;
};

SpectralResult spectral_gap(const GalerkinSystem& sys);

struct PoissonSolution {
  Eigen::VectorXd coef;
  double residual = 0.0;  // || -L u - f ||_{L^2(mu)}
  double mean = 0.0;      // int u dmu
};

PoissonSolution poisson_solve(const GalerkinSystem& sys, const ScalarField& f);

InequalityCheck duality_stability_residual(const GalerkinSystem& sys, const ScalarField& f,
                                           const Tolerance& tol = {});

Eigen::VectorXd semigroup_apply(const GalerkinSystem& sys, const SpectralResult& spec, const Eigen::VectorXd& coef,
                                double t);
ScalarField semigroup_apply(const GalerkinSystem& sys, const SpectralResult& spec, const ScalarField& f, double t);

struct DecayRow {
  double t = 0.0;
  double phi = 0.0;
  double quotient = 0.0;  // -(phi(t_next) - phi(t)) / dt, cell starting at t
  double bound = 0.0;
  bool decreasing = true;
  bool bounded = true;
};

struct DecayTable {
  double p = 1.0, q = 2.0;
  std::vector<DecayRow> rows;
  double shift = 0.0;  // constant added to make f positive
  double phi0_vs_norm_q = 0.0;
  double phi_limit = 0.0;
  double norm_p_sq = 0.0;
  double gradient_bound_violation = 0.0;  // max relative excess on bulk nodes, informational
  bool pass = false;
};

DecayTable semigroup_decay_check(const GalerkinSystem& sys, const SpectralResult& spec, const ScalarField& f,
                                 double p, double q, const std::vector<double>& grid, bool allow_shift = true);

}  // namespace wgauss
