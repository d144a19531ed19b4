#ifndef HOLOJCAS_NUMERICS_HPP
#define HOLOJCAS_NUMERICS_HPP

/**
 * @file numerics.hpp
 * @brief Minimal complex linear-algebra layer shared by all modules:
 *        Kronecker/Hadamard products, Hermitian top-eigenpair extraction,
 *        and a counter-based RNG with seeded complex Gaussian sampling.
 */

#include <cstdint>
#include <utility>

#include "holojcas/common.hpp"

namespace holojcas {

/**
 * @brief Counter-based random number generator.
 *
 * The sequence is a pure function of (master_seed, stream_id), so trials can
 * draw from disjoint streams and parallel execution cannot change results.
 */
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_double();

  /// Pair of independent standard normal draws (Box-Muller).
  std::pair<double, double> next_gaussian_pair();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

/// Kronecker product of two vectors: result[i*q + j] = a[i] * b[j].
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Elementwise product; throws DimensionError on shape mismatch.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenPair {
  double value;          ///< algebraically largest eigenvalue
  ComplexVector vector;  ///< unit-norm, phase fixed (first nonzero entry real positive)
};

/**
 * @brief Top eigenpair of a Hermitian matrix.
 *
 * The input is symmetrized to (A + A^H)/2 before decomposition; inputs whose
 * Hermitian defect exceeds 1e-10 relative Frobenius norm are rejected. The
 * returned eigenvector has unit norm, residual |A e - lambda e| <= 1e-9 |A|_F,
 * and a deterministic global phase: the first entry with modulus above 1e-12
 * is made real and positive.
 */
EigenPair hermitian_top_eig(const ComplexMatrix& a);

/// Length-n vector of i.i.d. CN(0,1) entries (real/imag parts each N(0, 1/2)).
ComplexVector complex_gaussian_vector(Eigen::Index n, Rng& rng);

}  // namespace holojcas

#endif  // HOLOJCAS_NUMERICS_HPP
