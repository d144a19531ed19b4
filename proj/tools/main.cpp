// Command-line front end: convergence traces, Monte-Carlo sweeps, and the
// self-check suite for the holographic joint communication/sensing simulator.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "holojcas/commands.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  std::string format;
  std::int64_t seed = -1;
  int trials = -1;
};

// Loads the config and applies flag overrides; flags win over file values.
holojcas::RunConfig resolve_config(const CommonOptions& opts) {
  holojcas::RunConfig config = holojcas::load_run_config(opts.config_path);
  if (opts.seed >= 0) {
    config.system.master_seed = static_cast<std::uint64_t>(opts.seed);
  }
  if (opts.trials >= 1) config.n_trials = opts.trials;
  if (!opts.format.empty()) {
    if (opts.format == "csv") {
      config.format = holojcas::OutputFormat::kCsv;
    } else if (opts.format == "json") {
      config.format = holojcas::OutputFormat::kJson;
    } else {
      throw holojcas::ConfigError("--format must be csv or json");
    }
  }
  if (!opts.output_path.empty()) config.output_path = opts.output_path;
  if (config.output_path.empty()) {
    throw holojcas::ConfigError(
        "no output path: set output_path in the config or pass --out");
  }
  return config;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_trials) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file")
      ->required();
  cmd->add_option("--out", opts.output_path, "output file path");
  cmd->add_option("--seed", opts.seed, "override master_seed");
  cmd->add_option("--format", opts.format, "output format: csv or json");
  if (with_trials) {
    cmd->add_option("--trials", opts.trials, "override n_trials");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Hybrid holographic joint communication and sensing simulator"};
  app.require_subcommand(1);

  CommonOptions convergence_opts;
  CLI::App* convergence = app.add_subcommand(
      "convergence", "run one seeded trial and write the iteration trace");
  add_common_flags(convergence, convergence_opts, false);

  CommonOptions sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "run paired Monte-Carlo trials over the configured axis");
  add_common_flags(sweep_cmd, sweep_opts, true);

  app.add_subcommand("validate", "run the numerical self-check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convergence->parsed()) {
      const holojcas::RunConfig config = resolve_config(convergence_opts);
      return holojcas::cmd_convergence(config, config.output_path);
    }
    if (sweep_cmd->parsed()) {
      const holojcas::RunConfig config = resolve_config(sweep_opts);
      return holojcas::cmd_sweep(config, config.output_path);
    }
    return holojcas::cmd_validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
