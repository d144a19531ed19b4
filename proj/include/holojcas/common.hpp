#ifndef HOLOJCAS_COMMON_HPP
#define HOLOJCAS_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace holojcas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates a documented invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine failed (non-Hermitian input, eigensolver breakdown).
class NumericsError : public Error {
 public:
  using Error::Error;
};

/// A target angle contributes no Fisher information for the given beamformers.
class UnobservableAngleError : public Error {
 public:
  using Error::Error;
};

/// A surrogate expansion point has a vanishing quadratic form.
class DegenerateExpansionError : public Error {
 public:
  using Error::Error;
};

/// The selected eigenvector is annihilated by the holographic beamformer.
class NullSpaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace holojcas

#endif  // HOLOJCAS_COMMON_HPP
