#ifndef HOLOJCAS_VALIDATION_HPP
#define HOLOJCAS_VALIDATION_HPP

/**
 * @file validation.hpp
 * @brief Self-contained oracle checks: finite-difference derivative and FIM
 *        cross-checks, quadratic-form identities, surrogate tangency, and
 *        constraint satisfaction over a full optimization run.
 *
 * The checks re-derive every expected quantity independently of the code
 * paths they validate, so an implementation defect shows up as a mismatch.
 */

#include <string>
#include <vector>

#include "holojcas/optimizer.hpp"

namespace holojcas {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< worst-case error or failure description
};

/**
 * @brief Compares a steering bundle against central finite differences of
 *        steering_vector at (theta, phi): the derivative vectors and the
 *        reconstructed sensitivity matrices must both match.
 */
CheckResult check_bundle_consistency(const SystemConfig& config, double theta,
                                     double phi, const SteeringBundle& bundle);

/// Finite-difference derivative check over n_angles random (theta, phi).
CheckResult check_steering_derivatives(const SystemConfig& config,
                                       int n_angles, std::uint64_t seed);

/// w^T Q w identities against directly evaluated power and trace forms.
CheckResult check_quadratic_forms(const SystemConfig& config, int n_draws,
                                  std::uint64_t seed);

/// Tangent bound 2/x0 - x/x0^2 <= 1/x and surrogate tangency at v_t.
CheckResult check_surrogate_tangency(const SystemConfig& config, int n_draws,
                                     std::uint64_t seed);

/// Closed-form FIM against the finite-difference-of-mean numerical FIM.
CheckResult check_fim_numeric(const SystemConfig& config, int n_instances,
                              std::uint64_t seed);

/// Power budget after every digital update and PGA feasibility/monotonicity
/// across one full optimization run at the given config.
CheckResult check_constraints_over_run(const SystemConfig& config,
                                       std::uint64_t seed);

/// Runs every check at default sizes; used by the `validate` CLI command.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 20250811);

}  // namespace holojcas

#endif  // HOLOJCAS_VALIDATION_HPP
