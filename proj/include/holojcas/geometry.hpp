#ifndef HOLOJCAS_GEOMETRY_HPP
#define HOLOJCAS_GEOMETRY_HPP

/**
 * @file geometry.hpp
 * @brief Surface layout, feed placement, reference-wave phase matrix, and
 *        planar-array steering vectors with analytic angle derivatives.
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "holojcas/common.hpp"

namespace holojcas {

/**
 * @brief All physical and algorithmic parameters of one simulation setup.
 *
 * Angles are radians, spacings meters, powers watts. validate() checks every
 * documented invariant and throws ConfigError naming the first violation.
 */
struct SystemConfig {
  double frequency_hz = 20e9;
  double spacing_x_m = 0.25 * kSpeedOfLight / 20e9;  // lambda/4 at 20 GHz
  double spacing_y_m = 0.25 * kSpeedOfLight / 20e9;
  int num_elements = 36;  ///< M, perfect square
  int num_feeds = 3;      ///< K (= number of RF chains)
  double total_power_w = 1.0;
  double noise_var_comm_w = 1.0;   ///< sigma_n^2
  double noise_var_radar_w = 1.0;  ///< sigma_r^2
  double weight_rate = 1.0;        ///< alpha
  double weight_crb = 1.0;         ///< beta
  Complex reflection_coeff{1.0, 0.0};
  double target_theta_rad = 45.0 * M_PI / 180.0;
  double target_phi_rad = 60.0 * M_PI / 180.0;
  double refractive_index = 1.7320508075688772;  // sqrt(3)
  double pga_step = 0.01;
  double tolerance = 1e-5;
  int max_outer_iterations = 100;
  int max_pga_iterations = 500;
  std::uint64_t master_seed = 1;

  double wavelength() const { return kSpeedOfLight / frequency_hz; }

  /// Free-space wavenumber 2*pi/lambda.
  double wavenumber() const { return 2.0 * M_PI / wavelength(); }

  /// Guided-wave wavenumber 2*pi*n_s*f/c inside the substrate.
  double substrate_wavenumber() const {
    return 2.0 * M_PI * refractive_index * frequency_hz / kSpeedOfLight;
  }

  /// Elements per side (sqrt of num_elements).
  int grid_size() const;

  void validate() const;
};

/// Element grid, feed line, and the fixed reference-wave phase matrix.
struct ArrayGeometry {
  std::vector<Eigen::Vector3d> element_positions;  ///< M entries, meters
  std::vector<Eigen::Vector3d> feed_positions;     ///< K entries, meters
  ComplexMatrix phase_matrix;                      ///< Phi, M x K, unit modulus
};

/// Steering vector with analytic derivatives and sensitivity matrices.
struct SteeringBundle {
  ComplexVector a;          ///< M, unit-modulus entries
  ComplexVector da_dtheta;  ///< per radian
  ComplexVector da_dphi;
  ComplexMatrix a_theta;  ///< M x M Hermitian, da*a^H + a*da^H
  ComplexMatrix a_phi;
};

/**
 * @brief Builds the element grid, feed positions, and phase matrix.
 *
 * Element m = m_y*sqrt(M) + m_x sits at (m_x*d_x, m_y*d_y, 0). The K feeds
 * are spaced uniformly along the y = 0 edge at x = (k + 1/2)*L_x/K with
 * L_x = (sqrt(M)-1)*d_x. Phi[m,k] = exp(-j*|k_s|*r_mk) where r_mk is the
 * feed-to-element distance.
 */
ArrayGeometry build_geometry(const SystemConfig& config);

/// UPA response a = a_y (x) a_x for a plane wave from (theta, phi).
ComplexVector steering_vector(double theta, double phi,
                              const SystemConfig& config);

/// Analytic (d a/d theta, d a/d phi) consistent with steering_vector.
std::pair<ComplexVector, ComplexVector> steering_derivatives(
    double theta, double phi, const SystemConfig& config);

/// Hermitian sensitivity matrices A_xi = (da/dxi) a^H + a (da/dxi)^H.
std::pair<ComplexMatrix, ComplexMatrix> sensitivity_matrices(
    double theta, double phi, const SystemConfig& config);

/// Convenience: steering vector, derivatives, and sensitivity matrices at once.
SteeringBundle make_steering_bundle(double theta, double phi,
                                    const SystemConfig& config);

}  // namespace holojcas

#endif  // HOLOJCAS_GEOMETRY_HPP
