#include "holojcas/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace holojcas {

namespace {

constexpr double kVanishing = 1e-30;
constexpr double kPgaStepFloor = 1e-6;

ComplexMatrix apply_weights(const RealVector& w, const ComplexMatrix& phi) {
  return w.cast<Complex>().asDiagonal() * phi;
}

double real_quadratic_form(const RealVector& w, const ComplexMatrix& q) {
  const ComplexVector wc = w.cast<Complex>();
  return (wc.adjoint() * q * wc)(0, 0).real();
}

}  // namespace

BeamformerState make_beamformer_state(const RealVector& w,
                                      const ComplexVector& v_d,
                                      const ComplexMatrix& phi) {
  if (w.size() != phi.rows() || phi.cols() != v_d.size()) {
    throw DimensionError("make_beamformer_state: inconsistent dimensions");
  }
  return {w, v_d, apply_weights(w, phi)};
}

double surrogate_inv_quadratic(double x, double x0) {
  if (!(x > 0.0) || !(x0 > 0.0)) {
    throw DegenerateExpansionError(
        "surrogate_inv_quadratic: arguments must be positive");
  }
  return 2.0 / x0 - x / (x0 * x0);
}

ComplexMatrix digital_majorizer(const ComplexVector& h,
                                const ComplexMatrix& phi, const RealVector& w,
                                const SteeringBundle& bundle,
                                const ComplexVector& v_t,
                                const SystemConfig& config) {
  if (h.size() != phi.rows() || w.size() != phi.rows() ||
      v_t.size() != phi.cols()) {
    throw DimensionError("digital_majorizer: inconsistent dimensions");
  }
  const ComplexMatrix w_matrix = apply_weights(w, phi);
  const ComplexVector g = w_matrix.adjoint() * h;
  ComplexMatrix majorizer = config.weight_rate * (g * g.adjoint());

  if (config.weight_crb > 0.0) {
    const double coef = config.weight_crb * config.noise_var_radar_w /
                        (2.0 * std::norm(config.reflection_coeff));
    const auto add_term = [&](const ComplexMatrix& sensitivity,
                              const char* angle) {
      const ComplexMatrix t = sensitivity * w_matrix;  // A_xi W
      const double x0 = (t * v_t).squaredNorm();
      if (x0 < kVanishing) {
        std::ostringstream msg;
        msg << "degenerate expansion point for " << angle
            << ": v_t^H B v_t = " << x0;
        throw DegenerateExpansionError(msg.str());
      }
      majorizer += (coef / (x0 * x0)) * (t.adjoint() * t);
    };
    add_term(bundle.a_theta, "theta");
    add_term(bundle.a_phi, "phi");
  }
  return majorizer;
}

ComplexVector update_digital(const ComplexMatrix& majorizer,
                             const ComplexMatrix& w_matrix,
                             double total_power) {
  const EigenPair top = hermitian_top_eig(majorizer);
  const double norm_we = (w_matrix * top.vector).norm();
  if (norm_we < 1e-14) {
    throw NullSpaceError(
        "update_digital: top eigenvector lies in the null space of W");
  }
  return (std::sqrt(total_power) / norm_we) * top.vector;
}

QuadraticForms build_quadratic_forms(const ComplexMatrix& phi,
                                     const ComplexVector& v,
                                     const ComplexVector& h,
                                     const SteeringBundle& bundle) {
  if (phi.cols() != v.size() || phi.rows() != h.size() ||
      bundle.a_theta.rows() != phi.rows()) {
    throw DimensionError("build_quadratic_forms: inconsistent dimensions");
  }
  const ComplexVector u = phi * v;

  QuadraticForms forms;
  const ComplexVector q = u.cwiseProduct(h.conjugate());
  forms.q_c = q * q.adjoint();

  // Q_xi = diag(u)^H A_xi^2 diag(u), assembled as (A diag(u))^H (A diag(u)).
  const ComplexMatrix g_theta = bundle.a_theta * u.asDiagonal();
  const ComplexMatrix g_phi = bundle.a_phi * u.asDiagonal();
  forms.q_theta = g_theta.adjoint() * g_theta;
  forms.q_phi = g_phi.adjoint() * g_phi;
  return forms;
}

RealMatrix holo_majorizer(const QuadraticForms& forms, const RealVector& w_t,
                          const SystemConfig& config) {
  if (w_t.size() != forms.q_c.rows()) {
    throw DimensionError("holo_majorizer: inconsistent dimensions");
  }
  ComplexMatrix m_w = config.weight_rate * forms.q_c;
  if (config.weight_crb > 0.0) {
    const double coef = config.weight_crb * config.noise_var_radar_w /
                        (2.0 * std::norm(config.reflection_coeff));
    const auto add_term = [&](const ComplexMatrix& q, const char* angle) {
      const double x0 = real_quadratic_form(w_t, q);
      if (x0 < kVanishing) {
        std::ostringstream msg;
        msg << "degenerate expansion point for " << angle
            << ": w_t^T Q w_t = " << x0;
        throw DegenerateExpansionError(msg.str());
      }
      m_w += (coef / (x0 * x0)) * q;
    };
    add_term(forms.q_theta, "theta");
    add_term(forms.q_phi, "phi");
  }
  return m_w.real();
}

RealVector pga_update(const RealVector& w0, const RealMatrix& m_w, double eta,
                      int max_iterations, double eps, PgaProbe* probe) {
  if (w0.size() != m_w.rows() || m_w.rows() != m_w.cols()) {
    throw DimensionError("pga_update: inconsistent dimensions");
  }
  if (!(eta > 0.0)) throw ConfigError("pga_update: eta must be positive");
  if ((w0.array() < 0.0).any() || (w0.array() > 1.0).any()) {
    throw ConfigError("pga_update: initial weights must lie in [0, 1]");
  }

  RealVector w = w0;
  double objective = w.dot(m_w * w);
  if (probe) {
    probe->objectives.push_back(objective);
    probe->min_coord = w.size() > 0 ? w.minCoeff() : 0.0;
    probe->max_coord = w.size() > 0 ? w.maxCoeff() : 0.0;
  }

  for (int k = 0; k < max_iterations; ++k) {
    const RealVector gradient = 2.0 * (m_w * w);
    double step = eta;
    RealVector candidate;
    double candidate_objective;
    for (;;) {
      candidate = (w + step * gradient).cwiseMax(0.0).cwiseMin(1.0);
      candidate_objective = candidate.dot(m_w * candidate);
      if (candidate_objective >= objective) break;
      if (step <= kPgaStepFloor) {
        // Even the floor step descends: stay put and let the loop terminate.
        candidate = w;
        candidate_objective = objective;
        break;
      }
      step = std::max(0.5 * step, kPgaStepFloor);
    }

    const double change =
        (candidate - w).norm() / std::max(1.0, w.norm());
    w = std::move(candidate);
    objective = candidate_objective;
    if (probe) {
      probe->objectives.push_back(objective);
      probe->min_coord = std::min(probe->min_coord, w.minCoeff());
      probe->max_coord = std::max(probe->max_coord, w.maxCoeff());
    }
    if (change < eps) break;
  }
  return w;
}

ObjectiveBreakdown evaluate_objective(const BeamformerState& state,
                                      const ComplexVector& h,
                                      const SteeringBundle& bundle,
                                      const SystemConfig& config) {
  ObjectiveBreakdown breakdown;
  breakdown.comm_term = received_power(h, state.W, state.v_d);
  const FimReport report = crb(bundle, state.W, state.v_d,
                               config.reflection_coeff,
                               config.noise_var_radar_w);
  breakdown.crb_theta = report.crb_theta_diag;
  breakdown.crb_phi = report.crb_phi_diag;
  breakdown.weighted_objective =
      config.weight_rate * breakdown.comm_term -
      config.weight_crb * (breakdown.crb_theta + breakdown.crb_phi);
  breakdown.rate = rate(h, state.W, state.v_d, config.noise_var_comm_w);
  return breakdown;
}

std::pair<BeamformerState, ConvergenceTrace> optimize(
    const SystemConfig& config, const ComplexVector& h,
    const ArrayGeometry& geometry, OptimizeProbe* probe) {
  config.validate();
  const ComplexMatrix& phi = geometry.phase_matrix;
  if (h.size() != phi.rows() || phi.rows() != config.num_elements ||
      phi.cols() != config.num_feeds) {
    throw DimensionError("optimize: channel/geometry/config dimensions differ");
  }
  const SteeringBundle bundle = make_steering_bundle(
      config.target_theta_rad, config.target_phi_rad, config);

  // Initial state: half-open aperture, rate-matched digital beamformer.
  RealVector w = RealVector::Constant(config.num_elements, 0.5);
  ComplexMatrix w_matrix = apply_weights(w, phi);
  ComplexVector g = w_matrix.adjoint() * h;
  ComplexVector v = update_digital(g * g.adjoint(), w_matrix,
                                   config.total_power_w);
  if (probe) probe->digital_tx_power.push_back(tx_power(w_matrix, v));

  ObjectiveBreakdown previous = evaluate_objective(
      make_beamformer_state(w, v, phi), h, bundle, config);

  ConvergenceTrace trace;
  trace.reason = StopReason::kIterationCap;

  for (int t = 1; t <= config.max_outer_iterations; ++t) {
    try {
      const ComplexMatrix majorizer =
          digital_majorizer(h, phi, w, bundle, v, config);
      v = update_digital(majorizer, w_matrix, config.total_power_w);
      if (probe) probe->digital_tx_power.push_back(tx_power(w_matrix, v));

      const QuadraticForms forms = build_quadratic_forms(phi, v, h, bundle);
      const RealMatrix m_w = holo_majorizer(forms, w, config);
      PgaProbe* pga_probe = nullptr;
      if (probe) pga_probe = &probe->pga_runs.emplace_back();
      w = pga_update(w, m_w, config.pga_step, config.max_pga_iterations,
                     config.tolerance, pga_probe);

      // Restore the power budget under the updated aperture; the scaling
      // factor tends to 1 as the weights converge.
      w_matrix = apply_weights(w, phi);
      const double norm_wv = (w_matrix * v).norm();
      if (norm_wv < 1e-14) {
        throw NullSpaceError(
            "optimize: holographic update annihilated the transmit signal");
      }
      v *= std::sqrt(config.total_power_w) / norm_wv;

      const BeamformerState state = make_beamformer_state(w, v, phi);
      const ObjectiveBreakdown current =
          evaluate_objective(state, h, bundle, config);
      trace.records.push_back({t, current.rate, current.crb_theta,
                               current.crb_phi, current.weighted_objective,
                               tx_power(state.W, state.v_d)});

      const bool settled =
          std::abs(current.rate - previous.rate) < config.tolerance &&
          std::abs(current.crb_theta - previous.crb_theta) < config.tolerance &&
          std::abs(current.crb_phi - previous.crb_phi) < config.tolerance;
      previous = current;
      if (settled) {
        trace.reason = StopReason::kToleranceMet;
        break;
      }
    } catch (const DegenerateExpansionError& e) {
      std::ostringstream msg;
      msg << "outer iteration " << t << ": " << e.what();
      throw DegenerateExpansionError(msg.str());
    } catch (const UnobservableAngleError& e) {
      std::ostringstream msg;
      msg << "outer iteration " << t << ": " << e.what();
      throw UnobservableAngleError(msg.str());
    }
  }
  return {make_beamformer_state(w, v, phi), trace};
}

}  // namespace holojcas
