/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
#include <algorithm>
#include <set>

#include "wgauss/gauss_rules.hpp"
#include "wgauss/report.hpp"

namespace wgauss {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"beckner",         "poincare", "scale_poincare",
                                              "lsi",             "euclidean_lsi", "lsi_equivalence",
                                              "hup",             "hup_stability", "spectral",
                                              "gamma_calculus"};
  return names;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { raise(ErrorCode::config, msg); }

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      bad("unknown key '" + it.key() + "' in " + where);
}

double num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) bad(where + " needs '" + key + "'");
  if (!j.at(key).is_number()) bad(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

double num_or(const json& j, const std::string& key, double dflt, const std::string& where) {
  return j.contains(key) ? num(j, key, where) : dflt;
}

int int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<int>();
}

std::vector<double> num_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) bad(where + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(int_of(v, where));
  return out;
}

Vec vec_of(const json& j, const std::string& where) {
  auto v = num_list(j, where);
  if (v.empty() || static_cast<int>(v.size()) > kMaxDim) bad(where + " has an unsupported length");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string str(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) bad(where + " needs string '" + key + "'");
  return j.at(key).get<std::string>();
}

WeightSpec weight_spec(const json& j, const std::string& where) {
  const std::string kind = str(j, "kind", where);
  if (kind == "monomial") {
    allow_keys(j, where, {"kind", "exponents"});
    if (!j.contains("exponents")) bad(where + " needs 'exponents'");
    return {Monomial{num_list(j.at("exponents"), where + ".exponents")}};
  }
  if (kind == "radial") {
    allow_keys(j, where, {"kind", "alpha"});
    return {Radial{num(j, "alpha", where)}};
  }
  if (kind == "dunkl") {
    allow_keys(j, where, {"kind", "roots", "multiplicities"});
    if (!j.contains("roots") || !j.at("roots").is_array()) bad(where + " needs 'roots'");
    DunklProduct d;
    for (const auto& r : j.at("roots")) d.roots.push_back(vec_of(r, where + ".roots"));
    if (!j.contains("multiplicities")) bad(where + " needs 'multiplicities'");
    d.multiplicities = num_list(j.at("multiplicities"), where + ".multiplicities");
    return {d};
  }
  if (kind == "gaussian_tilt") {
    allow_keys(j, where, {"kind", "s"});
    return {GaussianTilt{num(j, "s", where)}};
  }
  if (kind == "partial") {
    allow_keys(j, where, {"kind", "inner", "free"});
    if (!j.contains("inner")) bad(where + " needs 'inner'");
    if (!j.contains("free")) bad(where + " needs 'free'");
    return partial(weight_spec(j.at("inner"), where + ".inner"), int_list(j.at("free"), where + ".free"));
  }
  if (kind == "custom") bad("custom weights need callbacks and are only available through the library API");
  bad("unknown weight kind '" + kind + "'");
}

Cone cone_of(const json& j, int dim) {
  if (j.is_null()) return Cone::full_space(dim);
  const std::string kind = str(j, "kind", "cone");
  if (kind == "full") {
    allow_keys(j, "cone", {"kind"});
    return Cone::full_space(dim);
  }
  if (kind == "orthant") {
    allow_keys(j, "cone", {"kind", "axes"});
    if (!j.contains("axes")) bad("cone needs 'axes'");
    return Cone::orthant(dim, int_list(j.at("axes"), "cone.axes"));
  }
  if (kind == "halfspace") {
    allow_keys(j, "cone", {"kind", "normal"});
    if (!j.contains("normal")) bad("cone needs 'normal'");
    Vec nrm = vec_of(j.at("normal"), "cone.normal");
    if (nrm.size() != dim) bad("cone.normal has the wrong dimension");
    return Cone::halfspace(nrm);
  }
  bad("unknown cone kind '" + kind + "'");
}

std::vector<std::pair<double, double>> pair_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of [p, q]");
  std::vector<std::pair<double, double>> out;
  for (const auto& v : j) {
    auto pq = num_list(v, where);
    if (pq.size() != 2) bad(where + " entries must be [p, q]");
    out.emplace_back(pq[0], pq[1]);
  }
  return out;
}

PoincareLevel poincare_level(const std::string& s) {
  if (s == "basic") return PoincareLevel::basic;
  if (s == "gradient_stability") return PoincareLevel::gradient_stability;
  if (s == "l2_stability") return PoincareLevel::l2_stability;
  bad("unknown Poincare level '" + s + "'");
}

ScaleLevel scale_level(const std::string& s) {
  if (s == "basic") return ScaleLevel::basic;
  if (s == "improved") return ScaleLevel::improved;
  bad("unknown scale Poincare level '" + s + "'");
}

SweepChecker sweep_checker(const std::string& s) {
  if (s == "beckner") return SweepChecker::beckner;
  if (s == "poincare") return SweepChecker::poincare;
  if (s == "lsi") return SweepChecker::lsi;
  bad("unknown sweep checker '" + s + "'");
}

std::vector<std::string> str_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad(where + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

SuiteOptions parse_options(const json& j, int dim, const Weight& w) {
  SuiteOptions o;
  if (j.is_null()) return o;
  allow_keys(j, "options", {"beckner", "poincare", "scale_poincare", "lsi", "spectral", "gamma_calculus", "sweeps"});
  if (j.contains("beckner")) {
    const json& b = j.at("beckner");
    allow_keys(b, "options.beckner", {"pairs"});
    if (b.contains("pairs")) o.beckner_pairs = pair_list(b.at("pairs"), "options.beckner.pairs");
  }
  if (j.contains("poincare")) {
    const json& p = j.at("poincare");
    allow_keys(p, "options.poincare", {"levels", "q"});
    if (p.contains("levels")) {
      o.poincare_levels.clear();
      for (const auto& s : str_list(p.at("levels"), "options.poincare.levels"))
        o.poincare_levels.push_back(poincare_level(s));
    }
    o.poincare_q = num_or(p, "q", 2.0, "options.poincare");
  }
  if (j.contains("scale_poincare")) {
    const json& s = j.at("scale_poincare");
    allow_keys(s, "options.scale_poincare", {"lambdas", "levels"});
    if (s.contains("lambdas")) o.scale_lambdas = num_list(s.at("lambdas"), "options.scale_poincare.lambdas");
    if (s.contains("levels")) {
      o.scale_levels.clear();
      for (const auto& l : str_list(s.at("levels"), "options.scale_poincare.levels"))
        o.scale_levels.push_back(scale_level(l));
    }
  }
  if (j.contains("lsi")) {
    const json& l = j.at("lsi");
    allow_keys(l, "options.lsi", {"q"});
    if (l.contains("q")) o.lsi_q = num_list(l.at("q"), "options.lsi.q");
  }
  if (j.contains("spectral")) {
    const json& s = j.at("spectral");
    allow_keys(s, "options.spectral", {"degree", "decay_pairs", "decay_grid", "decay_fields"});
    if (s.contains("degree")) o.spectral_degree = int_of(s.at("degree"), "options.spectral.degree");
    if (s.contains("decay_pairs")) o.decay_pairs = pair_list(s.at("decay_pairs"), "options.spectral.decay_pairs");
    if (s.contains("decay_grid")) o.decay_grid = num_list(s.at("decay_grid"), "options.spectral.decay_grid");
    if (s.contains("decay_fields"))
      o.decay_fields = static_cast<std::size_t>(int_of(s.at("decay_fields"), "options.spectral.decay_fields"));
  }
  if (j.contains("gamma_calculus")) {
    const json& g = j.at("gamma_calculus");
    allow_keys(g, "options.gamma_calculus", {"points"});
    if (g.contains("points")) {
      int pts = int_of(g.at("points"), "options.gamma_calculus.points");
      if (pts < 1) bad("options.gamma_calculus.points must be positive");
      o.gamma_points = static_cast<std::size_t>(pts);
    }
  }
  if (j.contains("sweeps")) {
    if (!j.at("sweeps").is_array()) bad("options.sweeps must be an array");
    for (const auto& s : j.at("sweeps")) {
      allow_keys(s, "options.sweeps[]", {"checker", "field", "eps"});
      if (!s.contains("field") || !s.contains("eps")) bad("options.sweeps[] needs 'field' and 'eps'");
      o.sweeps.push_back(SweepRequest{sweep_checker(str(s, "checker", "options.sweeps[]")),
                                      FieldEntry{s.at("field"), parse_field(s.at("field"), dim, w)},
                                      num_list(s.at("eps"), "options.sweeps[].eps")});
    }
  }
  return o;
}

}  // namespace

Weight parse_weight(const json& weight, const json& cone, std::optional<int> dim) {
  WeightSpec spec = weight_spec(weight, "weight");
  int n = spec_dim(spec);
  if (dim) {
    if (n >= 0 && n != *dim) bad("'dim' disagrees with the weight dimension");
    n = *dim;
  }
  if (n < 0) bad("'dim' is required for this weight");
  if (n < 1 || n > kMaxDim) bad("dimension out of range");
  try {
    return Weight(std::move(spec), cone_of(cone, n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    raise(ErrorCode::config, std::string("invalid weight or cone: ") + e.what());
  }
}

namespace {
ScalarField parse_field_unchecked(const json& j, int dim, const Weight& w) {
  const std::string name = str(j, "name", "field");
  auto axis_of = [&](const char* key) {
    if (!j.contains(key)) bad("field " + name + " needs '" + key + "'");
    int k = int_of(j.at(key), "field." + name + "." + key);
    if (k < 0 || k >= dim) bad("field " + name + " axis out of range");
    return k;
  };
  if (name == "constant") {
    allow_keys(j, "field constant", {"name", "c"});
    return fields::constant(dim, num_or(j, "c", 1.0, "field constant"));
  }
  if (name == "affine") {
    allow_keys(j, "field affine", {"name", "a", "b"});
    if (!j.contains("a")) bad("field affine needs 'a'");
    Vec a = vec_of(j.at("a"), "field affine.a");
    if (a.size() != dim) bad("field affine.a has the wrong dimension");
    return fields::affine(a, num_or(j, "b", 0.0, "field affine"));
  }
  if (name == "exp_axis") {
    allow_keys(j, "field exp_axis", {"name", "b", "axis"});
    return fields::exp_axis(dim, num(j, "b", "field exp_axis"), axis_of("axis"));
  }
  if (name == "hermite_witness") {
    allow_keys(j, "field hermite_witness", {"name", "axis"});
    return fields::hermite_witness(dim, axis_of("axis"));
  }
  if (name == "gaussian") {
    allow_keys(j, "field gaussian", {"name", "amplitude", "lambda"});
    double lam = num_or(j, "lambda", 1.0, "field gaussian");
    if (!(lam > 0)) bad("field gaussian needs lambda > 0");
    return fields::gaussian(dim, num_or(j, "amplitude", 1.0, "field gaussian"), lam);
  }
  if (name == "gaussian_quarter") {
    allow_keys(j, "field gaussian_quarter", {"name", "amplitude"});
    return fields::gaussian_quarter(dim, num_or(j, "amplitude", 1.0, "field gaussian_quarter"));
  }
  if (name == "poly_gauss") {
    allow_keys(j, "field poly_gauss", {"name", "seed", "degree", "rate"});
    if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) bad("field poly_gauss needs a nonnegative 'seed'");
    int degree = j.contains("degree") ? int_of(j.at("degree"), "field poly_gauss.degree") : 3;
    double rate = num_or(j, "rate", 0.25, "field poly_gauss");
    if (degree < 0 || degree > 12 || !(rate > 0)) bad("field poly_gauss has out-of-range parameters");
    // even in restricted axes so that the Neumann condition holds
    std::vector<int> even;
    if (auto signs = w.cone().axis_signs())
      for (int k = 0; k < dim; ++k)
        if ((*signs)[k] != 0) even.push_back(k);
    return fields::poly_gauss(dim, j.at("seed").get<std::uint64_t>(), degree, rate, even);
  }
  bad("unknown field '" + name + "'");
}
}  // namespace

ScalarField parse_field(const json& j, int dim, const Weight& w) {
  try {
    return parse_field_unchecked(j, dim, w);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    raise(ErrorCode::config, std::string("invalid field: ") + e.what());
  }
}

RunConfig parse_config(json config, const RunOverrides& overrides) {
  allow_keys(config, "config",
             {"dim", "weight", "cone", "quadrature", "fields", "suites", "tolerances", "output", "options"});
  if (overrides.seed) config["quadrature"]["seed"] = *overrides.seed;
  if (overrides.tolerance) config["tolerances"]["relative"] = *overrides.tolerance;

  if (!config.contains("weight")) bad("config needs 'weight'");
  std::optional<int> dim;
  if (config.contains("dim")) dim = int_of(config.at("dim"), "dim");
  Weight w = parse_weight(config.at("weight"), config.value("cone", json()), dim);
  const int n = w.dim();

  RuleTarget q;
  if (config.contains("quadrature")) {
    const json& qj = config.at("quadrature");
    allow_keys(qj, "quadrature", {"order", "mc_samples", "seed", "monte_carlo"});
    if (qj.contains("order")) q.order = int_of(qj.at("order"), "quadrature.order");
    if (q.order < 1 || q.order > kMaxRuleOrder) bad("quadrature.order out of range");
    if (qj.contains("mc_samples")) {
      int s = int_of(qj.at("mc_samples"), "quadrature.mc_samples");
      if (s < 2) bad("quadrature.mc_samples must be at least 2");
      q.mc_samples = static_cast<std::size_t>(s);
    }
    if (qj.contains("seed")) {
      if (!qj.at("seed").is_number_unsigned()) bad("quadrature.seed must be a nonnegative integer");
      q.seed = qj.at("seed").get<std::uint64_t>();
    }
    if (qj.contains("monte_carlo")) {
      if (!qj.at("monte_carlo").is_boolean()) bad("quadrature.monte_carlo must be a boolean");
      q.force_monte_carlo = qj.at("monte_carlo").get<bool>();
    }
  }

  std::vector<FieldEntry> flds;
  if (config.contains("fields")) {
    if (!config.at("fields").is_array()) bad("'fields' must be an array");
    for (const auto& f : config.at("fields")) flds.push_back(FieldEntry{f, parse_field(f, n, w)});
  }

  std::vector<std::string> suites;
  if (config.contains("suites")) {
    std::set<std::string> seen;
    for (const auto& s : str_list(config.at("suites"), "suites")) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), s) == names.end()) bad("unknown suite '" + s + "'");
      if (!seen.insert(s).second) bad("suite '" + s + "' listed twice");
      suites.push_back(s);
    }
  }

  Tolerance tol;
  if (config.contains("tolerances")) {
    const json& t = config.at("tolerances");
    allow_keys(t, "tolerances", {"relative", "absolute"});
    tol.relative = num_or(t, "relative", tol.relative, "tolerances");
    if (t.contains("absolute") && !t.at("absolute").is_null()) tol.absolute = num(t, "absolute", "tolerances");
    if (!(tol.relative >= 0) || (tol.absolute && !(*tol.absolute >= 0))) bad("tolerances must be nonnegative");
  }

  std::optional<std::string> out;
  if (config.contains("output")) {
    if (!config.at("output").is_string()) bad("'output' must be a path string");
    out = config.at("output").get<std::string>();
  }

  SuiteOptions opts = parse_options(config.value("options", json()), n, w);
  return RunConfig{std::move(config), std::move(w), q, std::move(flds), std::move(suites), tol, out, std::move(opts)};
}

RunConfig parse_config_text(const std::string& text, const RunOverrides& overrides) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(std::move(j), overrides);
}

}  // namespace wgauss
