/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wgauss/inequality.hpp"
#include "wgauss/quadrature.hpp"

namespace wgauss {

// Suite names accepted in a run configuration, in canonical order.
const std::vector<std::string>& suite_names();

struct FieldEntry {
  nlohmann::json spec;  // as written in the config
  ScalarField field;
};

struct SweepRequest {
  SweepChecker checker = SweepChecker::poincare;
  FieldEntry perturbation;
  std::vector<double> eps;
};

struct SuiteOptions {
  std::vector<std::pair<double, double>> beckner_pairs{{1.0, 2.0}, {1.5, 2.0}};
  std::vector<PoincareLevel> poincare_levels{PoincareLevel::basic};
  double poincare_q = 2.0;
  std::vector<double> scale_lambdas;  // empty: {0.5, 1, 2} when homogeneous, else {1}
  std::vector<ScaleLevel> scale_levels{ScaleLevel::basic, ScaleLevel::improved};
  std::vector<double> lsi_q{2.0};
  std::optional<int> spectral_degree;
  std::vector<std::pair<double, double>> decay_pairs{{1.0, 2.0}, {1.5, 2.0}};
  std::vector<double> decay_grid{0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
  std::size_t decay_fields = 5;
  std::size_t gamma_points = 1000;
  std::vector<SweepRequest> sweeps;
};

struct RunConfig {
  nlohmann::json echo;  // effective configuration, overrides applied
  Weight weight;
  RuleTarget quadrature;
  std::vector<FieldEntry> fields;
  std::vector<std::string> suites;
  Tolerance tolerance;
  std::optional<std::string> output;
  SuiteOptions options;
};

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

// Raises ErrorCode::config on any schema violation.
RunConfig parse_config(nlohmann::json config, const RunOverrides& overrides = {});
RunConfig parse_config_text(const std::string& text, const RunOverrides& overrides = {});
Weight parse_weight(const nlohmann::json& weight, const nlohmann::json& cone, std::optional<int> dim);
ScalarField parse_field(const nlohmann::json& spec, int dim, const Weight& w);

struct SuiteResult {
  std::string suite;
  bool pass = true;
  std::vector<InequalityCheck> checks;
  nlohmann::json extra = nlohmann::json::object();  // suite-specific records
  std::vector<nlohmann::json> skipped;
  std::optional<std::string> error;
  double seconds = 0.0;
};

struct RunReport {
  nlohmann::json config;
  std::string version;
  std::vector<SuiteResult> suites;
  bool pass = true;
};

// Executes the suites in declared order. Deterministic for a fixed config.
RunReport run(const RunConfig& config);

enum class ReportFormat { json, csv };
enum class ReportView { verify, sharpness, spectrum, summary };

nlohmann::json check_to_json(const InequalityCheck& c);
nlohmann::json to_json(const RunReport& report, ReportView view = ReportView::verify, bool timings = false);
// JSON with every number printed to 17 significant digits.
std::string dump_json(const nlohmann::json& j);
std::string emit(const RunReport& report, ReportFormat format, ReportView view = ReportView::verify,
                 bool timings = false);

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

}  // namespace wgauss
