#ifndef HOLOJCAS_COMMS_HPP
#define HOLOJCAS_COMMS_HPP

/**
 * @file comms.hpp
 * @brief Channel generation and communication-side metrics.
 */

#include "holojcas/common.hpp"
#include "holojcas/numerics.hpp"

namespace holojcas {

/// Downlink channel between the surface and the user.
struct Channel {
  ComplexVector h;
};

/// i.i.d. CN(0,1) Rayleigh channel of length m.
Channel rayleigh_channel(Eigen::Index m, Rng& rng);

/// |h^H W v|^2 in watts.
double received_power(const ComplexVector& h, const ComplexMatrix& w_matrix,
                      const ComplexVector& v);

/// Achievable rate log2(1 + |h^H W v|^2 / sigma_n^2) in bits/s/Hz.
double rate(const ComplexVector& h, const ComplexMatrix& w_matrix,
            const ComplexVector& v, double noise_var);

/// Transmit power |W v|^2 in watts.
double tx_power(const ComplexMatrix& w_matrix, const ComplexVector& v);

}  // namespace holojcas

#endif  // HOLOJCAS_COMMS_HPP
