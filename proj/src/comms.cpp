#include "holojcas/comms.hpp"

#include <cmath>
#include <sstream>

namespace holojcas {

namespace {

void check_dims(const ComplexVector& h, const ComplexMatrix& w_matrix,
                const ComplexVector& v) {
  if (h.size() != w_matrix.rows() || w_matrix.cols() != v.size()) {
    std::ostringstream msg;
    msg << "beamformer dimensions inconsistent: h " << h.size() << ", W "
        << w_matrix.rows() << "x" << w_matrix.cols() << ", v " << v.size();
    throw DimensionError(msg.str());
  }
}

}  // namespace

Channel rayleigh_channel(Eigen::Index m, Rng& rng) {
  return {complex_gaussian_vector(m, rng)};
}

double received_power(const ComplexVector& h, const ComplexMatrix& w_matrix,
                      const ComplexVector& v) {
  check_dims(h, w_matrix, v);
  const Complex gain = h.dot(w_matrix * v);  // h^H W v
  return std::norm(gain);
}

double rate(const ComplexVector& h, const ComplexMatrix& w_matrix,
            const ComplexVector& v, double noise_var) {
  if (!(noise_var > 0.0)) {
    throw ConfigError("rate: noise variance must be positive");
  }
  return std::log2(1.0 + received_power(h, w_matrix, v) / noise_var);
}

double tx_power(const ComplexMatrix& w_matrix, const ComplexVector& v) {
  if (w_matrix.cols() != v.size()) {
    std::ostringstream msg;
    msg << "tx_power: W is " << w_matrix.rows() << "x" << w_matrix.cols()
        << " but v has length " << v.size();
    throw DimensionError(msg.str());
  }
  return (w_matrix * v).squaredNorm();
}

}  // namespace holojcas
