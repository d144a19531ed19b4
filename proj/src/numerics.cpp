#include "holojcas/numerics.hpp"

#include <cmath>
#include <sstream>

namespace holojcas {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      state_(mix64(mix64(master_seed + kGolden) ^
                   mix64(stream_id + 0xD1B54A32D192ED03ULL))) {}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> Rng::next_gaussian_pair() {
  // u1 in (0,1] so the log is finite.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() < 1 || b.size() < 1) {
    throw DimensionError("kron: both factors must be non-empty");
  }
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "hadamard: dimension mismatch (" << a.rows() << "x" << a.cols()
        << " vs " << b.rows() << "x" << b.cols() << ")";
    throw DimensionError(msg.str());
  }
  return a.cwiseProduct(b);
}

EigenPair hermitian_top_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError("hermitian_top_eig: input must be square and non-empty");
  }
  const double scale = a.norm();
  const double defect = (a - a.adjoint()).norm();
  if (defect > 1e-10 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "hermitian_top_eig: input is not Hermitian (defect " << defect
        << ", |A|_F " << scale << ")";
    throw NumericsError(msg.str());
  }

  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::Index top = a.rows() - 1;
  const double lambda = solver.eigenvalues()(top);
  ComplexVector e = solver.eigenvectors().col(top);

  if (solver.info() != Eigen::Success) {
    const double residual = (a * e - lambda * e).norm();
    std::ostringstream msg;
    msg << "hermitian_top_eig: eigensolver did not converge (residual "
        << residual << ")";
    throw NumericsError(msg.str());
  }

  // Deterministic phase: first entry with modulus > 1e-12 becomes real positive.
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const double mag = std::abs(e(i));
    if (mag > 1e-12) {
      e *= std::conj(e(i)) / mag;
      break;
    }
  }
  e.normalize();

  const double residual = (a * e - lambda * e).norm();
  if (residual > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "hermitian_top_eig: residual " << residual << " exceeds 1e-9 * |A|_F";
    throw NumericsError(msg.str());
  }
  return {lambda, e};
}

ComplexVector complex_gaussian_vector(Eigen::Index n, Rng& rng) {
  if (n < 1) {
    throw DimensionError("complex_gaussian_vector: length must be >= 1");
  }
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [re, im] = rng.next_gaussian_pair();
    out(i) = Complex(re * M_SQRT1_2, im * M_SQRT1_2);
  }
  return out;
}

}  // namespace holojcas
