#include "holojcas/geometry.hpp"

#include <cmath>
#include <sstream>

#include "holojcas/numerics.hpp"

namespace holojcas {

int SystemConfig::grid_size() const {
  const int root = static_cast<int>(std::lround(std::sqrt(
      static_cast<double>(num_elements))));
  return root;
}

void SystemConfig::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError(what); };

  if (!(frequency_hz > 0.0)) fail("frequency_hz must be positive");
  const int root = grid_size();
  if (root * root != num_elements) {
    std::ostringstream msg;
    msg << "num_elements must be a perfect square (got " << num_elements << ")";
    fail(msg.str());
  }
  if (root < 2) fail("num_elements must satisfy sqrt(M) >= 2");
  const double half_wavelength = 0.5 * wavelength();
  if (!(spacing_x_m > 0.0 && spacing_x_m < half_wavelength)) {
    fail("spacing_x_m must lie in (0, lambda/2): sub-wavelength element spacing");
  }
  if (!(spacing_y_m > 0.0 && spacing_y_m < half_wavelength)) {
    fail("spacing_y_m must lie in (0, lambda/2): sub-wavelength element spacing");
  }
  if (num_feeds < 1 || num_feeds > num_elements) {
    fail("num_feeds must satisfy 1 <= K <= M");
  }
  if (!(total_power_w > 0.0)) fail("total_power_w must be positive");
  if (!(noise_var_comm_w > 0.0)) fail("noise_var_comm_w must be positive");
  if (!(noise_var_radar_w > 0.0)) fail("noise_var_radar_w must be positive");
  if (!(weight_rate >= 0.0)) fail("weight_rate (alpha) must be non-negative");
  if (!(weight_crb >= 0.0)) fail("weight_crb (beta) must be non-negative");
  if (!(std::abs(reflection_coeff) > 0.0)) {
    fail("reflection_coeff must have positive magnitude");
  }
  if (!(refractive_index > 0.0)) fail("refractive_index must be positive");
  if (!(pga_step > 0.0)) fail("pga_step (eta) must be positive");
  if (!(tolerance > 0.0)) fail("tolerance (epsilon) must be positive");
  if (max_outer_iterations < 1) fail("max_outer_iterations must be >= 1");
  if (max_pga_iterations < 1) fail("max_pga_iterations must be >= 1");
  if (!std::isfinite(target_theta_rad) || !std::isfinite(target_phi_rad)) {
    fail("target angles must be finite");
  }
}

ArrayGeometry build_geometry(const SystemConfig& config) {
  config.validate();
  const int root = config.grid_size();
  const int m_total = config.num_elements;
  const int k_total = config.num_feeds;

  ArrayGeometry geom;
  geom.element_positions.reserve(m_total);
  for (int my = 0; my < root; ++my) {
    for (int mx = 0; mx < root; ++mx) {
      geom.element_positions.emplace_back(mx * config.spacing_x_m,
                                          my * config.spacing_y_m, 0.0);
    }
  }

  const double edge_length = (root - 1) * config.spacing_x_m;
  geom.feed_positions.reserve(k_total);
  for (int k = 0; k < k_total; ++k) {
    const double x = (k + 0.5) * edge_length / k_total;
    geom.feed_positions.emplace_back(x, 0.0, 0.0);
  }

  const double ks = config.substrate_wavenumber();
  geom.phase_matrix.resize(m_total, k_total);
  for (int m = 0; m < m_total; ++m) {
    for (int k = 0; k < k_total; ++k) {
      const double dist =
          (geom.element_positions[m] - geom.feed_positions[k]).norm();
      geom.phase_matrix(m, k) = std::polar(1.0, -ks * dist);
    }
  }
  return geom;
}

namespace {

// Per-axis phase progression exp(j*n*c) for n = 0..root-1.
ComplexVector axis_response(int root, double c) {
  ComplexVector v(root);
  for (int n = 0; n < root; ++n) {
    v(n) = std::polar(1.0, n * c);
  }
  return v;
}

// Derivative factor * [0, 1*e^{c}, 2*e^{2c}, ...] for a phase slope c.
ComplexVector axis_derivative(int root, double c, Complex factor) {
  ComplexVector v(root);
  for (int n = 0; n < root; ++n) {
    v(n) = factor * static_cast<double>(n) * std::polar(1.0, n * c);
  }
  return v;
}

}  // namespace

ComplexVector steering_vector(double theta, double phi,
                              const SystemConfig& config) {
  const int root = config.grid_size();
  const double kf = config.wavenumber();
  const double cx = kf * config.spacing_x_m * std::sin(theta) * std::cos(phi);
  const double cy = kf * config.spacing_y_m * std::sin(theta) * std::sin(phi);
  return kron(axis_response(root, cy), axis_response(root, cx));
}

std::pair<ComplexVector, ComplexVector> steering_derivatives(
    double theta, double phi, const SystemConfig& config) {
  const int root = config.grid_size();
  const double kf = config.wavenumber();
  const double dx = config.spacing_x_m;
  const double dy = config.spacing_y_m;
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);

  const double cx = kf * dx * st * cp;
  const double cy = kf * dy * st * sp;
  const ComplexVector ax = axis_response(root, cx);
  const ComplexVector ay = axis_response(root, cy);

  const Complex j(0.0, 1.0);
  const ComplexVector dax_dtheta = axis_derivative(root, cx, j * kf * dx * ct * cp);
  const ComplexVector day_dtheta = axis_derivative(root, cy, j * kf * dy * ct * sp);
  const ComplexVector dax_dphi = axis_derivative(root, cx, -j * kf * dx * st * sp);
  const ComplexVector day_dphi = axis_derivative(root, cy, j * kf * dy * st * cp);

  // Product rule in the same Kronecker ordering as a = a_y (x) a_x.
  ComplexVector da_dtheta = kron(day_dtheta, ax) + kron(ay, dax_dtheta);
  ComplexVector da_dphi = kron(day_dphi, ax) + kron(ay, dax_dphi);
  return {std::move(da_dtheta), std::move(da_dphi)};
}

std::pair<ComplexMatrix, ComplexMatrix> sensitivity_matrices(
    double theta, double phi, const SystemConfig& config) {
  const ComplexVector a = steering_vector(theta, phi, config);
  const auto [da_dtheta, da_dphi] = steering_derivatives(theta, phi, config);
  ComplexMatrix a_theta = da_dtheta * a.adjoint() + a * da_dtheta.adjoint();
  ComplexMatrix a_phi = da_dphi * a.adjoint() + a * da_dphi.adjoint();
  return {std::move(a_theta), std::move(a_phi)};
}

SteeringBundle make_steering_bundle(double theta, double phi,
                                    const SystemConfig& config) {
  SteeringBundle bundle;
  bundle.a = steering_vector(theta, phi, config);
  std::tie(bundle.da_dtheta, bundle.da_dphi) =
      steering_derivatives(theta, phi, config);
  bundle.a_theta = bundle.da_dtheta * bundle.a.adjoint() +
                   bundle.a * bundle.da_dtheta.adjoint();
  bundle.a_phi =
      bundle.da_dphi * bundle.a.adjoint() + bundle.a * bundle.da_dphi.adjoint();
  return bundle;
}

}  // namespace holojcas
