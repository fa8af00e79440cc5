// nonlocal_lab <command> --config <path> [--seed N] [--out <dir>]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nonlocal/cli/csv.hpp"
#include "nonlocal/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace nonlocal::cli;

  CLI::App app{"Nonlocal evolution lab: simulation, attractors, bifurcation threshold, bound verdicts"};
  app.set_version_flag("--version", std::string(tool_version()));
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("command", command, "simulate | attractor | hstar | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"simulate", "attractor", "hstar", "verify", "sweep"}));
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", out_dir, "override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const nonlocal::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output = *out_dir;

  try {
    return run(*parse_command(command), cfg, std::cout, std::cerr);
  } catch (const nonlocal::Error& e) {
    std::cerr << "error [" << nonlocal::to_string(e.code()) << "] in " << command << ": " << e.what() << "\n";
    const bool usage = e.code() == nonlocal::ErrorCode::config || e.code() == nonlocal::ErrorCode::invalid_argument;
    return usage ? exit_usage : exit_failed_verdict;
  } catch (const std::exception& e) {
    std::cerr << "error in " << command << ": " << e.what() << "\n";
    return exit_failed_verdict;
  }
}
