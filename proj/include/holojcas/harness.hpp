#ifndef HOLOJCAS_HARNESS_HPP
#define HOLOJCAS_HARNESS_HPP

/**
 * @file harness.hpp
 * @brief Monte-Carlo experiment engine: seeded paired trials of the proposed
 *        and benchmark schemes, aggregated over channel realizations and
 *        swept over SNR, RF-chain count, or aperture size.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "holojcas/optimizer.hpp"

namespace holojcas {

enum class Scheme { kProposed, kBenchmark };

const char* scheme_name(Scheme scheme);

/// Outcome of one scheme on one channel realization.
struct TrialResult {
  int trial_index = 0;
  Scheme scheme = Scheme::kProposed;
  bool ok = false;
  std::string error;  ///< non-empty when ok is false
  double rate = 0.0;
  double crb_theta_diag = 0.0;
  double crb_phi_diag = 0.0;
  double crb_theta_full = 0.0;
  double crb_phi_full = 0.0;
  double weighted_objective = 0.0;
  int outer_iterations = 0;    ///< 0 for the benchmark (no iteration)
  bool tolerance_met = false;  ///< proposed scheme only
  double wall_time_s = 0.0;
  std::uint64_t channel_hash = 0;  ///< pairing witness (same h for both schemes)
};

enum class SweepAxis { kSnrDb, kRfChains, kAperture };

const char* axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

/// Per-(axis value, scheme) aggregate over the surviving trials.
struct SweepPoint {
  double axis_value = 0.0;
  Scheme scheme = Scheme::kProposed;
  double mean_rate = 0.0;
  double mean_crb_theta_lin = 0.0;
  double mean_crb_phi_lin = 0.0;
  double mean_crb_theta_db = 0.0;  ///< 10*log10 of the linear mean
  double mean_crb_phi_db = 0.0;
  double mean_crb_theta_db_alt = 0.0;  ///< mean of the per-trial dB values
  double mean_crb_phi_db_alt = 0.0;
  int n_ok = 0;
  int n_failed = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kSnrDb;
  std::vector<double> values;
  std::vector<SweepPoint> points;    ///< two per value: proposed, benchmark
  std::vector<TrialResult> trials;   ///< every trial, ordered by (value, index)
};

/**
 * @brief Benchmark: holographic weights drawn i.i.d. uniform on [0,1], digital
 *        beamformer set to the power-scaled dominant eigenvector of
 *        W^H h h^H W.
 */
BeamformerState benchmark_solution(const SystemConfig& config,
                                   const ComplexVector& h,
                                   const ArrayGeometry& geometry, Rng& rng);

/**
 * @brief Runs both schemes on the channel drawn for trial_index.
 *
 * The channel stream and the benchmark's weight stream are derived from
 * (master_seed, trial_index) only, so results do not depend on execution
 * order or parallelism. Optimizer failures are recorded per trial.
 */
std::pair<TrialResult, TrialResult> run_trial(const SystemConfig& config,
                                              int trial_index);

/// Returns a copy of config with the axis value applied; validates it.
SystemConfig apply_axis_override(SystemConfig config, SweepAxis axis,
                                 double value);

/**
 * @brief Runs n_trials paired trials per axis value and aggregates.
 *
 * All axis values are validated before any trial runs. Trials execute on a
 * worker pool capped by the HOLO_JCAS_THREADS environment variable.
 */
SweepResult sweep(const SystemConfig& config, SweepAxis axis,
                  const std::vector<double>& values, int n_trials);

/// Worker count for trial execution (>= 1, capped by HOLO_JCAS_THREADS).
int worker_count(int n_tasks);

/// FNV-1a hash over the raw bytes of a complex vector.
std::uint64_t hash_vector(const ComplexVector& v);

}  // namespace holojcas

#endif  // HOLOJCAS_HARNESS_HPP
