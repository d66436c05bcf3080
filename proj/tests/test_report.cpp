/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <doctest.h>

#include <sstream>

#include "wgauss/report.hpp"

using namespace wgauss;
using nlohmann::json;

namespace {

const char* kTrivial = R"({"dim": 1, "weight": {"kind": "monomial", "exponents": [0]},
  "fields": [{"name": "affine", "a": [1], "b": 0}], "suites": ["poincare"]})";

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;  // sentinel: nothing thrown
}

json with(const char* base, const std::string& key, json value) {
  json j = json::parse(base);
  j[key] = std::move(value);
  return j;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("configuration errors are config errors") {
  auto cfg = [](const json& j) { return [j] { parse_config(j); }; };
  CHECK(code_of([] { parse_config_text("{\"dim\": 1,"); }) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "suites", {"sobolev"}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "suites", {"poincare", "poincare"}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "fields", json::array({{{"name", "bessel"}}})))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "colour", "blue"))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "quadrature", {{"order", 500}}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "quadrature", {{"mc_samples", 1}}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "weight", {{"kind", "custom"}}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "weight", {{"kind", "monomial"}, {"exponents", {-1}}}))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "output", 3))) == ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "tolerances", {{"relative", "tight"}}))) == ErrorCode::config);
  // field dimension must match the weight
  CHECK(code_of(cfg(with(kTrivial, "fields", json::array({{{"name", "affine"}, {"a", {1, 2}}, {"b", 0}}})))) ==
        ErrorCode::config);
  CHECK(code_of(cfg(with(kTrivial, "fields", json::array({{{"name", "hermite_witness"}, {"axis", 3}}})))) ==
        ErrorCode::config);
}

TEST_CASE("overrides land in the echoed configuration") {
  RunConfig c = parse_config_text(kTrivial, RunOverrides{42, 1e-9});
  CHECK(c.quadrature.seed == 42);
  CHECK(c.tolerance.relative == 1e-9);
  CHECK(c.echo["quadrature"]["seed"] == 42);
  CHECK(c.echo["tolerances"]["relative"] == 1e-9);
  CHECK(c.fields.size() == 1);
  CHECK(c.suites == std::vector<std::string>{"poincare"});
  CHECK(suite_names().size() == 10);
}

TEST_CASE("trivial run passes") {
  RunReport r = run(parse_config_text(kTrivial));
  CHECK(r.pass);
  REQUIRE(r.suites.size() == 1);
  CHECK(r.suites[0].suite == "poincare");
  REQUIRE(r.suites[0].checks.size() == 1);
  const auto& c = r.suites[0].checks[0];
  CHECK(c.theorem == "poincare.basic");
  CHECK(c.lhs == doctest::Approx(1.0));
  CHECK(c.rhs == doctest::Approx(1.0));
  json j = to_json(r);
  for (const char* key : {"config", "version", "suites", "pass"}) CHECK(j.contains(key));
  json cj = j["suites"][0]["checks"][0];
  for (const char* key : {"theorem", "p", "q", "lhs", "rhs", "constant", "deficit", "tolerance", "pass", "diagnostics"})
    CHECK(cj.contains(key));
  CHECK(cj["p"].is_null());
  CHECK(cj["q"] == 2.0);
  CHECK_FALSE(j["suites"][0].contains("seconds"));
  CHECK(to_json(r, ReportView::verify, true)["suites"][0].contains("seconds"));
}

TEST_CASE("empty suite list") {
  RunReport r = run(parse_config_text(R"({"dim": 1, "weight": {"kind": "monomial", "exponents": [0]}, "suites": []})"));
  json j = to_json(r);
  CHECK(j["suites"] == json::array());
  CHECK(j["pass"] == true);
}

TEST_CASE("suite errors fail the run without aborting it") {
  RunReport r = run(parse_config_text(R"({"dim": 2, "weight": {"kind": "gaussian_tilt", "s": -0.5},
    "fields": [{"name": "gaussian_quarter", "amplitude": 1}], "suites": ["euclidean_lsi", "poincare"]})"));
  CHECK_FALSE(r.pass);
  REQUIRE(r.suites.size() == 2);
  CHECK(r.suites[0].error.has_value());
  CHECK_FALSE(r.suites[0].pass);
  CHECK(r.suites[1].pass);
}

TEST_CASE("inadmissible fields are skipped, not failed") {
  RunReport r = run(parse_config_text(R"({"weight": {"kind": "monomial", "exponents": [1.5]},
    "cone": {"kind": "orthant", "axes": [0]},
    "fields": [{"name": "affine", "a": [1], "b": 0}, {"name": "gaussian_quarter", "amplitude": 1}],
    "suites": ["poincare"]})"));
  CHECK(r.pass);
  CHECK(r.suites[0].checks.size() == 1);
  CHECK(r.suites[0].skipped.size() == 1);
}

TEST_CASE("reports are deterministic and formats agree") {
  json cfg = json::parse(R"({"weight": {"kind": "partial", "inner": {"kind": "monomial", "exponents": [1.5]},
    "free": [1]}, "cone": {"kind": "orthant", "axes": [0]}, "quadrature": {"order": 24, "seed": 5},
    "fields": [{"name": "affine", "a": [0, 3], "b": 1}, {"name": "exp_axis", "b": 0.5, "axis": 1},
               {"name": "poly_gauss", "seed": 4}],
    "suites": ["beckner", "poincare", "lsi", "hup", "spectral"],
    "options": {"spectral": {"degree": 6, "decay_fields": 2}}})");
  RunReport a = run(parse_config(cfg)), b = run(parse_config(cfg));
  std::string ja = emit(a, ReportFormat::json), jb = emit(b, ReportFormat::json);
  CHECK(ja == jb);
  CHECK(a.pass);
  json parsed = json::parse(ja);
  auto rows = parse_csv(emit(a, ReportFormat::csv));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"theorem", "lhs", "rhs", "deficit", "pass"});
  std::size_t row = 1;
  for (const auto& s : parsed["suites"])
    for (const auto& c : s["checks"]) {
      REQUIRE(row < rows.size());
      CHECK(rows[row][0] == c["theorem"].get<std::string>());
      double lhs = std::stod(rows[row][1]), rhs = std::stod(rows[row][2]);
      CHECK(lhs == doctest::Approx(c["lhs"].get<double>()).epsilon(1e-11));
      CHECK(rhs == doctest::Approx(c["rhs"].get<double>()).epsilon(1e-11));
      CHECK(rows[row][4] == (c["pass"].get<bool>() ? "true" : "false"));
      ++row;
    }
  CHECK(row == rows.size());

  json spectrum = to_json(a, ReportView::spectrum);
  REQUIRE(spectrum["suites"].size() == 1);
  CHECK(spectrum["suites"][0]["suite"] == "spectral");
  json summary = to_json(a, ReportView::summary);
  CHECK(summary["suites"].size() == 5);
  auto srows = parse_csv(emit(a, ReportFormat::csv, ReportView::summary));
  CHECK(srows[0] == std::vector<std::string>{"suite", "checks", "failed", "pass"});
}

TEST_CASE("numbers are printed for round trips") {
  json j = {{"b", 0.1}, {"a", std::nan("")}, {"c", {1.0, 1e300}}};
  std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(json::parse(s)["b"].get<double>() == 0.1);
}

TEST_CASE("CSV deficits below print resolution are zero") {
  RunReport r = run(parse_config_text(kTrivial));
  auto rows = parse_csv(emit(r, ReportFormat::csv));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == std::vector<std::string>{"poincare.basic", "1", "1", "0", "true"});
}
