#ifndef HOLOJCAS_SENSING_HPP
#define HOLOJCAS_SENSING_HPP

/**
 * @file sensing.hpp
 * @brief Fisher information and Cramer-Rao bounds for the two target angles.
 */

#include "holojcas/geometry.hpp"

namespace holojcas {

/**
 * @brief Fisher information and the two flavours of CRB.
 *
 * The per-parameter bounds invert the FIM diagonal entries; the full bounds
 * are the diagonal of the 2x2 FIM inverse, +infinity when the FIM is singular.
 */
struct FimReport {
  Eigen::Matrix2d fim;  ///< ordered (theta, phi), rad^-2
  double crb_theta_diag;
  double crb_phi_diag;
  double crb_theta_full;
  double crb_phi_full;
};

/**
 * @brief 2x2 Fisher information matrix for (theta, phi).
 *
 * F[i,j] = (2|gamma|^2 / sigma_r^2) * Re{(A_i W v)^H (A_j W v)} with
 * A_1 = A_theta, A_2 = A_phi.
 */
Eigen::Matrix2d fim_2x2(const SteeringBundle& bundle,
                        const ComplexMatrix& w_matrix, const ComplexVector& v,
                        Complex gamma, double noise_var_radar);

/**
 * @brief CRBs for both angles in per-parameter and full-inverse form.
 *
 * Throws UnobservableAngleError, naming the angle(s) concerned, when a
 * quadratic form v^H W^H A^2 W v vanishes (below 1e-30) or the sensitivity
 * matrix itself is zero up to floating-point roundoff.
 */
FimReport crb(const SteeringBundle& bundle, const ComplexMatrix& w_matrix,
              const ComplexVector& v, Complex gamma, double noise_var_radar);

}  // namespace holojcas

#endif  // HOLOJCAS_SENSING_HPP
