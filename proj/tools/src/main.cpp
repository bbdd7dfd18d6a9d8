// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace ecf::cli;
  CLI::App app{"ecflow: expansive curvature flows and reflection audits"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  const std::map<std::string, std::string> about{
      {"simulate", "evolve a shape and write frames and a time series"},
      {"sphere-ode", "integrate the radius of a round solution"},
      {"classify-speed", "ancientness, admissibility and homogeneity of a speed"},
      {"reflect-audit", "strict reflection across planes along an evolution"},
      {"rigidity-audit", "audit a trajectory coming out of a point"},
  };
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("-c,--config", config_path, "key = value configuration file");
    sub->add_option("-s,--set", overrides, "override a key (key=value), repeatable");
    sub->add_option("-o,--output", output, "output directory (same as --set output_dir=...)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) {
      const std::string wanted = config.command;
      load_config_file(config, config_path);
      if (config.command != wanted) {
        std::cerr << "ecflow: config file is for '" << config.command << "', not '" << wanted << "'\n";
        return kUsage;
      }
    }
    for (const std::string& o : overrides) apply_override(config, o);
    if (!output.empty()) config.set("output_dir", output);
  } catch (const ecf::Error& e) {
    std::cerr << "ecflow: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return run(config, std::cout, std::cerr);
}
