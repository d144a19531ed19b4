#include "holojcas/validation.hpp"

#include <cmath>
#include <sstream>

#include "holojcas/harness.hpp"

namespace holojcas {

namespace {

constexpr double kFdStep = 1e-6;

std::string format_error(double value) {
  std::ostringstream out;
  out << "max relative error " << value;
  return out.str();
}

double relative_vector_error(const ComplexVector& actual,
                             const ComplexVector& expected) {
  const double scale = expected.norm();
  if (scale < 1e-9) {
    // Zero-derivative case: require a small absolute norm instead.
    return actual.norm() < 1e-9 ? 0.0 : actual.norm();
  }
  return (actual - expected).norm() / scale;
}

// Central finite difference of the steering vector along one angle.
ComplexVector fd_steering(const SystemConfig& config, double theta, double phi,
                          bool along_theta) {
  const double dt = along_theta ? kFdStep : 0.0;
  const double dp = along_theta ? 0.0 : kFdStep;
  const ComplexVector plus = steering_vector(theta + dt, phi + dp, config);
  const ComplexVector minus = steering_vector(theta - dt, phi - dp, config);
  return (plus - minus) / (2.0 * kFdStep);
}

RealVector random_box_weights(int n, Rng& rng) {
  RealVector w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.next_double();
  return w;
}

std::pair<double, double> random_angles(Rng& rng) {
  // Away from the poles so both angle derivatives stay informative.
  const double theta = 0.15 + 1.2 * rng.next_double();
  const double phi = 0.1 + 1.3 * rng.next_double();
  return {theta, phi};
}

}  // namespace

CheckResult check_bundle_consistency(const SystemConfig& config, double theta,
                                     double phi,
                                     const SteeringBundle& bundle) {
  CheckResult result{"bundle-consistency", false, ""};
  const ComplexVector fd_theta = fd_steering(config, theta, phi, true);
  const ComplexVector fd_phi = fd_steering(config, theta, phi, false);

  double worst = relative_vector_error(bundle.da_dtheta, fd_theta);
  worst = std::max(worst, relative_vector_error(bundle.da_dphi, fd_phi));

  // Sensitivity matrices reconstructed from the finite-difference derivatives.
  const ComplexVector& a = bundle.a;
  const ComplexMatrix fd_a_theta = fd_theta * a.adjoint() + a * fd_theta.adjoint();
  const ComplexMatrix fd_a_phi = fd_phi * a.adjoint() + a * fd_phi.adjoint();
  const auto matrix_error = [](const ComplexMatrix& actual,
                               const ComplexMatrix& expected) {
    const double scale = expected.norm();
    if (scale < 1e-9) return actual.norm() < 1e-9 ? 0.0 : actual.norm();
    return (actual - expected).norm() / scale;
  };
  worst = std::max(worst, matrix_error(bundle.a_theta, fd_a_theta));
  worst = std::max(worst, matrix_error(bundle.a_phi, fd_a_phi));

  result.passed = worst < 1e-6;
  result.detail = format_error(worst);
  return result;
}

CheckResult check_steering_derivatives(const SystemConfig& config,
                                       int n_angles, std::uint64_t seed) {
  CheckResult result{"steering-derivative-fd", true, ""};
  Rng rng(seed, 101);
  double worst = 0.0;
  for (int i = 0; i < n_angles; ++i) {
    const auto [theta, phi] = random_angles(rng);
    const SteeringBundle bundle = make_steering_bundle(theta, phi, config);
    const CheckResult one = check_bundle_consistency(config, theta, phi, bundle);
    if (!one.passed) {
      result.passed = false;
    }
    const ComplexVector fd_theta = fd_steering(config, theta, phi, true);
    worst = std::max(worst, relative_vector_error(bundle.da_dtheta, fd_theta));
    const ComplexVector fd_phi = fd_steering(config, theta, phi, false);
    worst = std::max(worst, relative_vector_error(bundle.da_dphi, fd_phi));
  }
  if (worst >= 1e-6) result.passed = false;
  result.detail = format_error(worst);
  return result;
}

CheckResult check_quadratic_forms(const SystemConfig& config, int n_draws,
                                  std::uint64_t seed) {
  CheckResult result{"quadratic-form-identities", true, ""};
  const ArrayGeometry geometry = build_geometry(config);
  Rng rng(seed, 202);
  double worst = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const auto [theta, phi] = random_angles(rng);
    const SteeringBundle bundle = make_steering_bundle(theta, phi, config);
    const ComplexVector h = complex_gaussian_vector(config.num_elements, rng);
    const ComplexVector v = complex_gaussian_vector(config.num_feeds, rng);
    const RealVector w = random_box_weights(config.num_elements, rng);

    const QuadraticForms forms =
        build_quadratic_forms(geometry.phase_matrix, v, h, bundle);
    const ComplexMatrix w_matrix =
        w.cast<Complex>().asDiagonal() * geometry.phase_matrix;
    const ComplexVector wc = w.cast<Complex>();

    // Communication form against the directly evaluated received power.
    const double lhs_c = (wc.adjoint() * forms.q_c * wc)(0, 0).real();
    const double rhs_c = received_power(h, w_matrix, v);
    worst = std::max(worst, std::abs(lhs_c - rhs_c) / std::max(1e-300, rhs_c));

    // Sensing forms against the trace denominators evaluated from scratch.
    const ComplexVector wv = w_matrix * v;
    const double rhs_theta = (bundle.a_theta * wv).squaredNorm();
    const double lhs_theta = (wc.adjoint() * forms.q_theta * wc)(0, 0).real();
    worst = std::max(worst,
                     std::abs(lhs_theta - rhs_theta) / std::max(1e-300, rhs_theta));
    const double rhs_phi = (bundle.a_phi * wv).squaredNorm();
    const double lhs_phi = (wc.adjoint() * forms.q_phi * wc)(0, 0).real();
    worst = std::max(worst,
                     std::abs(lhs_phi - rhs_phi) / std::max(1e-300, rhs_phi));
  }
  result.passed = worst < 1e-10;
  result.detail = format_error(worst);
  return result;
}

CheckResult check_surrogate_tangency(const SystemConfig& config, int n_draws,
                                     std::uint64_t seed) {
  CheckResult result{"surrogate-tangency", true, ""};
  double worst = 0.0;

  // Tangent bound over a log-spaced grid: surrogate <= 1/x, equal iff x = x0.
  for (int i = 0; i < 60; ++i) {
    const double x0 = std::pow(10.0, -6.0 + 12.0 * i / 59.0);
    for (int j = 0; j < 60; ++j) {
      const double x = std::pow(10.0, -6.0 + 12.0 * j / 59.0);
      const double s = surrogate_inv_quadratic(x, x0);
      const double inv = 1.0 / x;
      if (i == j) {
        worst = std::max(worst, std::abs(s - inv) / inv);
      } else if (s > inv) {
        result.passed = false;
      }
    }
  }
  if (worst > 1e-15) result.passed = false;

  // Tangency of the majorized digital objective at the expansion point.
  const ArrayGeometry geometry = build_geometry(config);
  const SteeringBundle bundle = make_steering_bundle(
      config.target_theta_rad, config.target_phi_rad, config);
  Rng rng(seed, 303);
  double worst_tangency = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const ComplexVector h = complex_gaussian_vector(config.num_elements, rng);
    const RealVector w = random_box_weights(config.num_elements, rng);
    const ComplexVector v = complex_gaussian_vector(config.num_feeds, rng);
    const BeamformerState state =
        make_beamformer_state(w, v, geometry.phase_matrix);

    const double coef = config.noise_var_radar_w /
                        (2.0 * std::norm(config.reflection_coeff));
    const ComplexVector wv = state.W * v;
    const double x_theta = (bundle.a_theta * wv).squaredNorm();
    const double x_phi = (bundle.a_phi * wv).squaredNorm();
    const double surrogate_value =
        config.weight_rate * received_power(h, state.W, v) -
        config.weight_crb * coef *
            (surrogate_inv_quadratic(x_theta, x_theta) +
             surrogate_inv_quadratic(x_phi, x_phi));
    const ObjectiveBreakdown truth =
        evaluate_objective(state, h, bundle, config);
    const double scale = std::max(1.0, std::abs(truth.weighted_objective));
    worst_tangency = std::max(
        worst_tangency,
        std::abs(surrogate_value - truth.weighted_objective) / scale);
  }
  if (worst_tangency > 1e-12) result.passed = false;
  result.detail = format_error(std::max(worst, worst_tangency));
  return result;
}

CheckResult check_fim_numeric(const SystemConfig& config, int n_instances,
                              std::uint64_t seed) {
  CheckResult result{"fim-finite-difference", true, ""};
  const ArrayGeometry geometry = build_geometry(config);
  Rng rng(seed, 404);
  const double step = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < n_instances; ++i) {
    const auto [theta, phi] = random_angles(rng);
    const SteeringBundle bundle = make_steering_bundle(theta, phi, config);
    const RealVector w = random_box_weights(config.num_elements, rng);
    const ComplexMatrix w_matrix =
        w.cast<Complex>().asDiagonal() * geometry.phase_matrix;
    const ComplexVector v = complex_gaussian_vector(config.num_feeds, rng);

    const Complex gamma = config.reflection_coeff;
    const auto mean_signal = [&](double th, double ph) -> ComplexVector {
      const ComplexVector a = steering_vector(th, ph, config);
      return gamma * a * (a.adjoint() * (w_matrix * v));
    };
    const ComplexVector dmu_theta =
        (mean_signal(theta + step, phi) - mean_signal(theta - step, phi)) /
        (2.0 * step);
    const ComplexVector dmu_phi =
        (mean_signal(theta, phi + step) - mean_signal(theta, phi - step)) /
        (2.0 * step);

    Eigen::Matrix2d numeric;
    const double coef = 2.0 / config.noise_var_radar_w;
    numeric(0, 0) = coef * dmu_theta.squaredNorm();
    numeric(1, 1) = coef * dmu_phi.squaredNorm();
    numeric(0, 1) = coef * dmu_theta.dot(dmu_phi).real();
    numeric(1, 0) = numeric(0, 1);

    const Eigen::Matrix2d closed =
        fim_2x2(bundle, w_matrix, v, gamma, config.noise_var_radar_w);
    worst = std::max(worst, (closed - numeric).norm() / numeric.norm());
  }
  result.passed = worst < 1e-5;
  result.detail = format_error(worst);
  return result;
}

CheckResult check_constraints_over_run(const SystemConfig& config,
                                       std::uint64_t seed) {
  CheckResult result{"constraints-over-run", true, ""};
  const ArrayGeometry geometry = build_geometry(config);
  Rng rng(seed, 505);
  const Channel channel = rayleigh_channel(config.num_elements, rng);

  OptimizeProbe probe;
  const auto [state, trace] = optimize(config, channel.h, geometry, &probe);

  double worst_power = 0.0;
  for (double p : probe.digital_tx_power) {
    worst_power = std::max(
        worst_power, std::abs(p - config.total_power_w) / config.total_power_w);
  }
  if (worst_power >= 1e-9) result.passed = false;

  for (const PgaProbe& run : probe.pga_runs) {
    if (run.min_coord < 0.0 || run.max_coord > 1.0) result.passed = false;
    for (std::size_t k = 1; k < run.objectives.size(); ++k) {
      const double scale = std::max(1.0, std::abs(run.objectives[k - 1]));
      if (run.objectives[k] < run.objectives[k - 1] - 1e-12 * scale) {
        result.passed = false;
      }
    }
  }

  const double final_power = tx_power(state.W, state.v_d);
  if (std::abs(final_power - config.total_power_w) / config.total_power_w >=
      1e-9) {
    result.passed = false;
  }
  if ((state.w.array() < 0.0).any() || (state.w.array() > 1.0).any()) {
    result.passed = false;
  }
  std::ostringstream detail;
  detail << "digital power error " << worst_power << ", "
         << trace.records.size() << " outer iterations";
  result.detail = detail.str();
  return result;
}

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  SystemConfig large;
  large.num_elements = 100;
  large.num_feeds = 3;

  SystemConfig medium;  // default 36-element setup
  SystemConfig small;
  small.num_elements = 16;
  small.num_feeds = 3;

  std::vector<CheckResult> results;
  results.push_back(check_steering_derivatives(large, 20, seed));
  results.push_back(check_quadratic_forms(medium, 100, seed));
  results.push_back(check_surrogate_tangency(medium, 20, seed));
  results.push_back(check_fim_numeric(small, 10, seed));
  results.push_back(check_constraints_over_run(medium, seed));
  return results;
}

}  // namespace holojcas
