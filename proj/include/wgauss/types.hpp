/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wgauss {

inline constexpr int kMaxDim = 6;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

enum class ErrorCode {
  domain = 1,
  singularity,
  inadmissible_weight,
  not_homogeneous,
  ambiguous_normal,
  no_boundary,
  resource,
  unsupported,
  integration_failure,
  evaluation,
  decay_contract,
  contract,
  degenerate_input,
  parameter,
  mean_zero_violation,
  degree_too_high,
  config,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

// Counter-based generator: the i-th draw depends only on (seed, i).
std::uint64_t mix64(std::uint64_t z);
double uniform01(std::uint64_t seed, std::uint64_t index);
double standard_normal(std::uint64_t seed, std::uint64_t index);

}  // namespace wgauss
