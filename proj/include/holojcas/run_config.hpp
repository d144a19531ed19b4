#ifndef HOLOJCAS_RUN_CONFIG_HPP
#define HOLOJCAS_RUN_CONFIG_HPP

/**
 * @file run_config.hpp
 * @brief Structured JSON configuration for the command-line front end.
 *
 * Every key is optional and falls back to the default experiment setup
 * (20 GHz, quarter-wavelength spacing, 36 elements, 3 RF chains, 0 dB SNR,
 * target at 45/60 degrees). Unknown keys are rejected.
 */

#include <optional>
#include <string>
#include <vector>

#include "holojcas/harness.hpp"

namespace holojcas {

enum class OutputFormat { kCsv, kJson };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kSnrDb;
  std::vector<double> values;
};

struct RunConfig {
  SystemConfig system;
  std::optional<SweepSpec> sweep;
  int n_trials = 100;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
};

/// Parses and validates a JSON config document; throws ConfigError.
RunConfig parse_run_config(const std::string& json_text);

/// Reads a config file from disk.
RunConfig load_run_config(const std::string& path);

}  // namespace holojcas

#endif  // HOLOJCAS_RUN_CONFIG_HPP
