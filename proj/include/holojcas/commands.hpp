#ifndef HOLOJCAS_COMMANDS_HPP
#define HOLOJCAS_COMMANDS_HPP

/**
 * @file commands.hpp
 * @brief Implementations behind the CLI subcommands. Output files are
 *        written atomically: content is assembled in memory, stored to a
 *        temporary file beside the target, and renamed into place.
 */

#include <string>

#include "holojcas/run_config.hpp"

namespace holojcas {

/// Shortest decimal representation that round-trips the binary value.
std::string format_double(double value);

/// Atomic temp-then-rename write; throws Error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// One seeded trial; writes per-iteration rate/CRB/objective/power rows.
int cmd_convergence(const RunConfig& config, const std::string& output_path);

/// Paired sweep over the configured axis; writes one row per (value, scheme).
int cmd_sweep(const RunConfig& config, const std::string& output_path);

/// Runs the oracle suite, printing one pass/fail line per check.
int cmd_validate();

/// Serialized forms, exposed for tests.
std::string render_convergence(const RunConfig& config);
std::string render_sweep(const RunConfig& config);

}  // namespace holojcas

#endif  // HOLOJCAS_COMMANDS_HPP
