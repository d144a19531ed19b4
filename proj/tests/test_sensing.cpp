#include <doctest.h>

#include <cmath>

#include "holojcas/numerics.hpp"
#include "holojcas/sensing.hpp"

using namespace holojcas;

namespace {

struct Instance {
  SystemConfig config;
  SteeringBundle bundle;
  ComplexMatrix w_matrix;
  ComplexVector v;
};

Instance random_instance(int m, int k, std::uint64_t stream) {
  Instance inst;
  inst.config.num_elements = m;
  inst.config.num_feeds = k;
  Rng rng(31, stream);
  const double theta = 0.2 + rng.next_double();
  const double phi = 0.3 + rng.next_double();
  inst.bundle = make_steering_bundle(theta, phi, inst.config);
  const ArrayGeometry geom = build_geometry(inst.config);
  RealVector w(m);
  for (int i = 0; i < m; ++i) w(i) = rng.next_double();
  inst.w_matrix = w.cast<Complex>().asDiagonal() * geom.phase_matrix;
  inst.v = complex_gaussian_vector(k, rng);
  return inst;
}

}  // namespace

TEST_CASE("fim is zero without transmit energy and scales with |gamma|^2") {
  const Instance inst = random_instance(16, 3, 0);
  const ComplexMatrix w_zero = ComplexMatrix::Zero(16, 3);
  CHECK(fim_2x2(inst.bundle, w_zero, inst.v, Complex(1, 0), 1.0).norm() == 0.0);

  const Eigen::Matrix2d base =
      fim_2x2(inst.bundle, inst.w_matrix, inst.v, Complex(1, 0), 1.0);
  const Eigen::Matrix2d doubled =
      fim_2x2(inst.bundle, inst.w_matrix, inst.v, Complex(2, 0), 1.0);
  CHECK((doubled - 4.0 * base).norm() <= 1e-12 * base.norm());
}

TEST_CASE("fim diagonal matches the independent quadratic form") {
  const Instance inst = random_instance(16, 3, 1);
  const double sigma = 0.7;
  const Complex gamma(0.8, -0.6);
  const Eigen::Matrix2d fim =
      fim_2x2(inst.bundle, inst.w_matrix, inst.v, gamma, sigma);

  const ComplexVector wv = inst.w_matrix * inst.v;
  const double expected =
      2.0 * std::norm(gamma) / sigma * (inst.bundle.a_theta * wv).squaredNorm();
  CHECK(std::abs(fim(0, 0) - expected) <= 1e-12 * expected);
}

TEST_CASE("fim matches the finite-difference-of-mean oracle") {
  const double step = 1e-5;
  for (int i = 0; i < 5; ++i) {
    SystemConfig config;
    config.num_elements = 16;
    config.num_feeds = 3;
    Rng rng(37, static_cast<std::uint64_t>(i));
    const double theta = 0.25 + rng.next_double();
    const double phi = 0.2 + rng.next_double();
    const SteeringBundle bundle = make_steering_bundle(theta, phi, config);
    const ArrayGeometry geom = build_geometry(config);
    RealVector w(16);
    for (int j = 0; j < 16; ++j) w(j) = rng.next_double();
    const ComplexMatrix w_matrix =
        w.cast<Complex>().asDiagonal() * geom.phase_matrix;
    const ComplexVector v = complex_gaussian_vector(3, rng);
    const Complex gamma(1.0, 0.4);
    const double sigma = 1.3;

    const auto mean_signal = [&](double th, double ph) {
      const ComplexVector a = steering_vector(th, ph, config);
      return ComplexVector(gamma * a * (a.adjoint() * (w_matrix * v)));
    };
    const ComplexVector d_theta =
        (mean_signal(theta + step, phi) - mean_signal(theta - step, phi)) /
        (2.0 * step);
    const ComplexVector d_phi =
        (mean_signal(theta, phi + step) - mean_signal(theta, phi - step)) /
        (2.0 * step);
    Eigen::Matrix2d numeric;
    numeric(0, 0) = 2.0 / sigma * d_theta.squaredNorm();
    numeric(1, 1) = 2.0 / sigma * d_phi.squaredNorm();
    numeric(0, 1) = 2.0 / sigma * d_theta.dot(d_phi).real();
    numeric(1, 0) = numeric(0, 1);

    const Eigen::Matrix2d closed = fim_2x2(bundle, w_matrix, v, gamma, sigma);
    CHECK((closed - numeric).norm() < 1e-5 * numeric.norm());
  }
}

TEST_CASE("fim is invariant to a global phase on v") {
  const Instance inst = random_instance(25, 4, 2);
  const Eigen::Matrix2d base =
      fim_2x2(inst.bundle, inst.w_matrix, inst.v, Complex(1, 0), 1.0);
  const Eigen::Matrix2d rotated = fim_2x2(
      inst.bundle, inst.w_matrix,
      ComplexVector(std::polar(1.0, 0.77) * inst.v), Complex(1, 0), 1.0);
  CHECK((rotated - base).norm() <= 1e-12 * base.norm());
}

TEST_CASE("diagonal CRBs double with the radar noise and invert the FIM diagonal") {
  const Instance inst = random_instance(16, 3, 3);
  const Complex gamma(0.9, 0.1);
  const FimReport base =
      crb(inst.bundle, inst.w_matrix, inst.v, gamma, 0.8);
  const FimReport doubled =
      crb(inst.bundle, inst.w_matrix, inst.v, gamma, 1.6);
  CHECK(doubled.crb_theta_diag ==
        doctest::Approx(2.0 * base.crb_theta_diag).epsilon(1e-12));
  CHECK(doubled.crb_phi_diag ==
        doctest::Approx(2.0 * base.crb_phi_diag).epsilon(1e-12));

  CHECK(base.crb_theta_diag * base.fim(0, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(base.crb_phi_diag * base.fim(1, 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grazing incidence makes theta unobservable") {
  SystemConfig config;
  config.num_elements = 16;
  config.num_feeds = 3;
  const SteeringBundle bundle =
      make_steering_bundle(M_PI / 2.0, 0.6, config);
  const ArrayGeometry geom = build_geometry(config);
  Rng rng(41, 0);
  const ComplexVector v = complex_gaussian_vector(3, rng);
  CHECK_THROWS_AS(crb(bundle, geom.phase_matrix, v, Complex(1, 0), 1.0),
                  UnobservableAngleError);
  try {
    crb(bundle, geom.phase_matrix, v, Complex(1, 0), 1.0);
  } catch (const UnobservableAngleError& e) {
    CHECK(std::string(e.what()).find("theta") != std::string::npos);
  }
}

TEST_CASE("beamformer gain scaling law") {
  const Instance inst = random_instance(16, 3, 4);
  const FimReport base =
      crb(inst.bundle, inst.w_matrix, inst.v, Complex(1, 0), 1.0);
  for (double t : {2.0, 3.5}) {
    const FimReport scaled = crb(inst.bundle, inst.w_matrix,
                                 ComplexVector(t * inst.v), Complex(1, 0), 1.0);
    CHECK(scaled.crb_theta_diag ==
          doctest::Approx(base.crb_theta_diag / (t * t)).epsilon(1e-12));
    CHECK(scaled.crb_phi_diag ==
          doctest::Approx(base.crb_phi_diag / (t * t)).epsilon(1e-12));
  }
}

TEST_CASE("full-inverse CRBs dominate the per-parameter form") {
  for (int i = 0; i < 100; ++i) {
    const Instance inst = random_instance(16, 3, 100 + i);
    const FimReport report =
        crb(inst.bundle, inst.w_matrix, inst.v, Complex(1, 0), 1.0);
    const double det = report.fim(0, 0) * report.fim(1, 1) -
                       report.fim(0, 1) * report.fim(1, 0);
    if (det <= 0.0) continue;  // singular: full form is the +inf sentinel
    CHECK(report.crb_theta_full >=
          report.crb_theta_diag * (1.0 - 1e-12));
    CHECK(report.crb_phi_full >= report.crb_phi_diag * (1.0 - 1e-12));
  }
}
