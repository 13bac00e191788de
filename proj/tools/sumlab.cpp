#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "sumlab/commands.hpp"
#include "sumlab/config.hpp"

int main(int argc, char** argv) {
  using namespace sumlab::cli;

  CLI::App app{"sumlab: critical-index Cesaro summability lab on S^n"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string config_file;
  std::optional<int> n, trunc, stages;
  std::optional<double> r;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> nmax, grid;
  std::optional<std::string> out;
  std::vector<std::string> sets;

  app.add_option("command", command, "verify | kernel | pack | scan | summability | stage")
      ->required()
      ->check(CLI::IsMember({"verify", "kernel", "pack", "scan", "summability", "stage"}));
  app.add_option("--config", config_file, "key = value config file");
  app.add_option("--n", n, "sphere dimension");
  app.add_option("--r", r, "packing separation");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--nmax", nmax, "largest degree N");
  app.add_option("--grid", grid, "grid points");
  app.add_option("--trunc", trunc, "error-series truncation");
  app.add_option("--stages", stages, "staged-construction depth");
  app.add_option("--out", out, "output directory");
  app.add_option("--set", sets, "extra key=value assignment (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigInvalid;
  }

  RunConfig cfg;
  try {
    if (!config_file.empty()) load_config_file(config_file, cfg);
    if (n) cfg.n = *n;
    if (r) cfg.r = *r;
    if (seed) cfg.seed = *seed;
    if (nmax) cfg.N_max = *nmax;
    if (grid) cfg.grid_points = *grid;
    if (trunc) cfg.trunc = *trunc;
    if (stages) cfg.stages = *stages;
    if (out) cfg.output_dir = *out;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      assign(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    return run(command, cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariantFailure;
  }
}
