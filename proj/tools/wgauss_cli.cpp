/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
// Command-line front end. Talks to the library only through the C interface.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "wgauss/wgauss.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string config;
  std::string out;
  std::string format = "json";
  double tolerance = 0.0;
  int64_t seed = -1;
  bool timings = false;
};

void add_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "run configuration (JSON)")->required();
  cmd->add_option("--out", o.out, "report path; defaults to the config 'output' entry, then stdout");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tolerance", o.tolerance, "relative tolerance override")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed override for Monte Carlo rules and samples")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--timings", o.timings, "include wall time per suite");
}

int execute(const Options& o, const char* view) {
  std::ifstream in(o.config);
  if (!in) {
    std::cerr << "wgauss: cannot read config " << o.config << "\n";
    return kExitIo;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::string out_path = o.out;
  if (out_path.empty()) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_object() && j.contains("output") && j["output"].is_string()) out_path = j["output"].get<std::string>();
  }

  char* report = nullptr;
  int exit_code = kExitConfig;
  wg_status st = wg_run(text.c_str(), o.format.c_str(), view, o.seed, o.tolerance, o.timings ? 1 : 0, &report,
                        &exit_code);
  if (st != WG_OK) {
    std::cerr << "wgauss: " << wg_last_error() << "\n";
    return st == WG_ERR_CONFIG ? kExitConfig : kExitFailure;
  }
  std::string body(report);
  wg_string_free(report);

  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << body) || !out.flush()) {
      std::cerr << "wgauss: cannot write report to " << out_path << "\n";
      return kExitIo;
    }
  }
  if (exit_code != 0) std::cerr << "wgauss: some checks failed\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of weighted Gaussian functional inequalities"};
  app.set_version_flag("--version", std::string(wg_version()));
  app.require_subcommand(1);
  Options opts;
  struct Sub {
    const char* name;
    const char* view;
    const char* help;
  };
  const Sub subs[] = {{"verify", "verify", "run all configured suites and emit the full report"},
                      {"sharpness", "sharpness", "only checks attained with equality, plus sweep tables"},
                      {"spectrum", "spectrum", "only the spectral suite"},
                      {"report", "report", "per-suite summary"}};
  const char* chosen = nullptr;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_options(cmd, opts);
    cmd->callback([&chosen, v = s.view] { chosen = v; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  return execute(opts, chosen);
}
