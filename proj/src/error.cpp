/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "wgauss/types.hpp"

#include <cmath>
#include <numbers>

namespace wgauss {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::inadmissible_weight: return "inadmissible-weight";
    case ErrorCode::not_homogeneous: return "not-homogeneous";
    case ErrorCode::ambiguous_normal: return "ambiguous-normal";
    case ErrorCode::no_boundary: return "no-boundary";
    case ErrorCode::resource: return "resource";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::integration_failure: return "integration-failure";
    case ErrorCode::evaluation: return "evaluation";
    case ErrorCode::decay_contract: return "decay-contract";
    case ErrorCode::contract: return "contract";
    case ErrorCode::degenerate_input: return "degenerate-input";
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::mean_zero_violation: return "mean-zero-violation";
    case ErrorCode::degree_too_high: return "degree-too-high";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void raise(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t bits = mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
  // 53 random bits, shifted away from zero so log() is always finite
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::uint64_t seed, std::uint64_t index) {
  double u1 = uniform01(seed, 2 * index);
  double u2 = uniform01(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace wgauss
