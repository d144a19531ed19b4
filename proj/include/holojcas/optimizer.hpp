#ifndef HOLOJCAS_OPTIMIZER_HPP
#define HOLOJCAS_OPTIMIZER_HPP

/**
 * @file optimizer.hpp
 * @brief Alternating optimization of the digital and holographic beamformers.
 *
 * Each outer iteration majorizes the inverse-quadratic CRB terms around the
 * current iterate, updates the digital beamformer with a power-scaled top
 * eigenvector, and updates the holographic amplitude weights with projected
 * gradient ascent on the majorized quadratic form.
 */

#include <utility>
#include <vector>

#include "holojcas/comms.hpp"
#include "holojcas/geometry.hpp"
#include "holojcas/sensing.hpp"

namespace holojcas {

/// Joint beamformer state; W is always diag(w) * Phi for the current pair.
struct BeamformerState {
  RealVector w;       ///< M holographic amplitudes in [0, 1]
  ComplexVector v_d;  ///< K digital weights, sqrt(watts)
  ComplexMatrix W;    ///< M x K effective beamformer
};

/// Builds a state and its derived W from (w, v, Phi).
BeamformerState make_beamformer_state(const RealVector& w,
                                      const ComplexVector& v_d,
                                      const ComplexMatrix& phi);

/// Terms of the weighted objective alpha*|h^H W v|^2 - beta*(CRBs).
struct ObjectiveBreakdown {
  double comm_term;  ///< received power, watts
  double crb_theta;  ///< inverted-diagonal FIM bound, rad^2
  double crb_phi;
  double weighted_objective;
  double rate;  ///< bits/s/Hz
};

struct IterationRecord {
  int iteration;
  double rate;
  double crb_theta;
  double crb_phi;
  double weighted_objective;
  double tx_power;
};

enum class StopReason { kToleranceMet, kIterationCap };

struct ConvergenceTrace {
  std::vector<IterationRecord> records;
  StopReason reason = StopReason::kIterationCap;
};

/// Collects inner-loop diagnostics from one pga_update call.
struct PgaProbe {
  std::vector<double> objectives;  ///< w^T M_w w after each accepted step
  double min_coord = 0.0;          ///< extremes over every accepted iterate
  double max_coord = 0.0;
};

/// Hooks for constraint and monotonicity checks across a full optimization.
struct OptimizeProbe {
  std::vector<double> digital_tx_power;  ///< after each digital update
  std::vector<PgaProbe> pga_runs;        ///< one entry per outer iteration
};

/// Tangent surrogate 2/x0 - x/x0^2 for 1/x around x0; requires x, x0 > 0.
double surrogate_inv_quadratic(double x, double x0);

/**
 * @brief Majorization matrix for the digital beamformer update.
 *
 * M^(t) = alpha W^H h h^H W
 *       + beta (sigma_r^2 / 2|gamma|^2) * [ B_theta / (v_t^H B_theta v_t)^2
 *                                         + B_phi   / (v_t^H B_phi   v_t)^2 ]
 * with B_xi = W^H A_xi A_xi W and W = diag(w) Phi. Throws
 * DegenerateExpansionError when an expansion-point quadratic form vanishes.
 */
ComplexMatrix digital_majorizer(const ComplexVector& h,
                                const ComplexMatrix& phi, const RealVector& w,
                                const SteeringBundle& bundle,
                                const ComplexVector& v_t,
                                const SystemConfig& config);

/**
 * @brief Top eigenvector of the majorizer scaled to the power budget:
 *        v = sqrt(P_total) * e_max / |W e_max|.
 */
ComplexVector update_digital(const ComplexMatrix& majorizer,
                             const ComplexMatrix& w_matrix, double total_power);

/// Hermitian M x M forms expressing the objective as quadratics in w.
struct QuadraticForms {
  ComplexMatrix q_c;      ///< w^T Q_c w     = |h^H diag(w) Phi v|^2
  ComplexMatrix q_theta;  ///< w^T Q_theta w = v^H W^H A_theta^2 W v
  ComplexMatrix q_phi;
};

QuadraticForms build_quadratic_forms(const ComplexMatrix& phi,
                                     const ComplexVector& v,
                                     const ComplexVector& h,
                                     const SteeringBundle& bundle);

/**
 * @brief Real symmetric majorizer for the holographic weights:
 *        Re( alpha Q_c + beta (sigma_r^2/2|gamma|^2)
 *            [ Q_theta/(w_t^T Q_theta w_t)^2 + Q_phi/(w_t^T Q_phi w_t)^2 ] ).
 */
RealMatrix holo_majorizer(const QuadraticForms& forms, const RealVector& w_t,
                          const SystemConfig& config);

/**
 * @brief Projected gradient ascent on w^T M_w w over the box [0,1]^M.
 *
 * Steps w <- clamp(w + eta * 2 M_w w). A step that would decrease the
 * objective has its length halved (floor 1e-6); if the floor step still
 * decreases it, the weights stay put and the loop stops.
 */
RealVector pga_update(const RealVector& w0, const RealMatrix& m_w, double eta,
                      int max_iterations, double eps,
                      PgaProbe* probe = nullptr);

/**
 * @brief Full alternating optimization from the deterministic initial state
 *        (w = 0.5, rate-matched digital beamformer).
 *
 * Stops when the per-iteration changes in rate and both CRBs all fall below
 * config.tolerance, or after max_outer_iterations. The returned state obeys
 * both constraints: w in [0,1]^M and |W v|^2 = P_total.
 */
std::pair<BeamformerState, ConvergenceTrace> optimize(
    const SystemConfig& config, const ComplexVector& h,
    const ArrayGeometry& geometry, OptimizeProbe* probe = nullptr);

/// Objective terms of a state against a channel and target bundle.
ObjectiveBreakdown evaluate_objective(const BeamformerState& state,
                                      const ComplexVector& h,
                                      const SteeringBundle& bundle,
                                      const SystemConfig& config);

}  // namespace holojcas

#endif  // HOLOJCAS_OPTIMIZER_HPP
