#include "holojcas/sensing.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace holojcas {

namespace {

void check_inputs(const SteeringBundle& bundle, const ComplexMatrix& w_matrix,
                  const ComplexVector& v, double noise_var_radar) {
  if (bundle.a_theta.rows() != w_matrix.rows() ||
      w_matrix.cols() != v.size()) {
    std::ostringstream msg;
    msg << "sensing: dimension mismatch (A " << bundle.a_theta.rows() << "x"
        << bundle.a_theta.cols() << ", W " << w_matrix.rows() << "x"
        << w_matrix.cols() << ", v " << v.size() << ")";
    throw DimensionError(msg.str());
  }
  if (!(noise_var_radar > 0.0)) {
    throw ConfigError("sensing: radar noise variance must be positive");
  }
}

}  // namespace

Eigen::Matrix2d fim_2x2(const SteeringBundle& bundle,
                        const ComplexMatrix& w_matrix, const ComplexVector& v,
                        Complex gamma, double noise_var_radar) {
  check_inputs(bundle, w_matrix, v, noise_var_radar);
  const ComplexVector wv = w_matrix * v;
  const ComplexVector s_theta = bundle.a_theta * wv;
  const ComplexVector s_phi = bundle.a_phi * wv;
  const double coef = 2.0 * std::norm(gamma) / noise_var_radar;

  Eigen::Matrix2d fim;
  fim(0, 0) = coef * s_theta.squaredNorm();
  fim(1, 1) = coef * s_phi.squaredNorm();
  fim(0, 1) = coef * s_theta.dot(s_phi).real();
  fim(1, 0) = fim(0, 1);
  return fim;
}

FimReport crb(const SteeringBundle& bundle, const ComplexMatrix& w_matrix,
              const ComplexVector& v, Complex gamma, double noise_var_radar) {
  check_inputs(bundle, w_matrix, v, noise_var_radar);
  const ComplexVector wv = w_matrix * v;
  const double q_theta = (bundle.a_theta * wv).squaredNorm();
  const double q_phi = (bundle.a_phi * wv).squaredNorm();

  // An angle is unobservable when its quadratic form vanishes or when the
  // sensitivity matrix is zero up to trig roundoff (an analytically zero
  // derivative, e.g. cos(theta) at theta = pi/2, leaves |A|_F at the
  // eps * M^1.5 scale rather than exactly zero).
  constexpr double kVanishing = 1e-30;
  const double m_size = static_cast<double>(bundle.a.size());
  const double zero_matrix_scale = 1e-12 * m_size * std::sqrt(m_size);
  const bool theta_dark =
      q_theta < kVanishing || bundle.a_theta.norm() < zero_matrix_scale;
  const bool phi_dark =
      q_phi < kVanishing || bundle.a_phi.norm() < zero_matrix_scale;
  if (theta_dark || phi_dark) {
    std::ostringstream msg;
    msg << "unobservable angle:";
    if (theta_dark) msg << " theta (quadratic form " << q_theta << ")";
    if (phi_dark) msg << " phi (quadratic form " << q_phi << ")";
    throw UnobservableAngleError(msg.str());
  }

  FimReport report;
  const double coef = noise_var_radar / (2.0 * std::norm(gamma));
  report.crb_theta_diag = coef / q_theta;
  report.crb_phi_diag = coef / q_phi;

  report.fim = fim_2x2(bundle, w_matrix, v, gamma, noise_var_radar);
  const double det = report.fim(0, 0) * report.fim(1, 1) -
                     report.fim(0, 1) * report.fim(1, 0);
  if (det > 0.0 && report.fim(0, 0) > 0.0) {
    report.crb_theta_full = report.fim(1, 1) / det;
    report.crb_phi_full = report.fim(0, 0) / det;
  } else {
    report.crb_theta_full = std::numeric_limits<double>::infinity();
    report.crb_phi_full = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace holojcas
