#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "holojcas/harness.hpp"

using namespace holojcas;

namespace {

SystemConfig small_config() {
  SystemConfig config;
  config.num_elements = 16;
  config.num_feeds = 2;
  return config;
}

bool deterministic_fields_equal(const TrialResult& a, const TrialResult& b) {
  return a.trial_index == b.trial_index && a.scheme == b.scheme &&
         a.ok == b.ok && a.error == b.error && a.rate == b.rate &&
         a.crb_theta_diag == b.crb_theta_diag &&
         a.crb_phi_diag == b.crb_phi_diag &&
         a.crb_theta_full == b.crb_theta_full &&
         a.crb_phi_full == b.crb_phi_full &&
         a.weighted_objective == b.weighted_objective &&
         a.outer_iterations == b.outer_iterations &&
         a.tolerance_met == b.tolerance_met &&
         a.channel_hash == b.channel_hash;
}

}  // namespace

TEST_CASE("benchmark solution obeys constraints and is reproducible") {
  const SystemConfig config = small_config();
  const ArrayGeometry geometry = build_geometry(config);
  Rng channel_rng(9, 0);
  const Channel channel = rayleigh_channel(config.num_elements, channel_rng);

  Rng rng1(9, 1), rng2(9, 1);
  const BeamformerState a = benchmark_solution(config, channel.h, geometry, rng1);
  const BeamformerState b = benchmark_solution(config, channel.h, geometry, rng2);
  CHECK((a.w - b.w).norm() == 0.0);
  CHECK((a.v_d - b.v_d).norm() == 0.0);

  CHECK((a.w.array() >= 0.0).all());
  CHECK((a.w.array() <= 1.0).all());
  CHECK(std::abs(tx_power(a.W, a.v_d) - config.total_power_w) <=
        1e-9 * config.total_power_w);
}

TEST_CASE("benchmark digital step is the matched filter for the drawn weights") {
  // With the rank-one objective, no equal-norm direction can beat the
  // dominant eigenvector of W^H h h^H W at the received power.
  const SystemConfig config = small_config();
  const ArrayGeometry geometry = build_geometry(config);
  Rng channel_rng(15, 0);
  const Channel channel = rayleigh_channel(config.num_elements, channel_rng);
  Rng weight_rng(15, 1);
  const BeamformerState state =
      benchmark_solution(config, channel.h, geometry, weight_rng);

  const double best = received_power(channel.h, state.W, state.v_d);
  Rng probe_rng(15, 2);
  for (int d = 0; d < 1000; ++d) {
    ComplexVector u = complex_gaussian_vector(config.num_feeds, probe_rng);
    u *= state.v_d.norm() / u.norm();
    CHECK(received_power(channel.h, state.W, u) <= best * (1.0 + 1e-9));
  }
}

TEST_CASE("run_trial pairs both schemes on one channel, deterministically") {
  const SystemConfig config = small_config();
  const auto [p1, b1] = run_trial(config, 3);
  const auto [p2, b2] = run_trial(config, 3);

  CHECK(p1.ok);
  CHECK(b1.ok);
  CHECK(deterministic_fields_equal(p1, p2));
  CHECK(deterministic_fields_equal(b1, b2));
  CHECK(p1.channel_hash == b1.channel_hash);  // identical channel draw
  CHECK(p1.scheme == Scheme::kProposed);
  CHECK(b1.scheme == Scheme::kBenchmark);
  CHECK(p1.outer_iterations >= 1);
  CHECK(b1.outer_iterations == 0);

  // Different trials draw different channels.
  const auto [p3, b3] = run_trial(config, 4);
  CHECK(p3.channel_hash != p1.channel_hash);
  (void)b3;
}

TEST_CASE("snr axis override fixes both noise variances") {
  const SystemConfig base = small_config();
  const SystemConfig at0 = apply_axis_override(base, SweepAxis::kSnrDb, 0.0);
  CHECK(at0.noise_var_comm_w == doctest::Approx(base.total_power_w));
  CHECK(at0.noise_var_radar_w == doctest::Approx(base.total_power_w));
  const SystemConfig at10 = apply_axis_override(base, SweepAxis::kSnrDb, 10.0);
  CHECK(at10.noise_var_comm_w ==
        doctest::Approx(base.total_power_w / 10.0).epsilon(1e-12));
  CHECK(at10.noise_var_comm_w == at10.noise_var_radar_w);

  const SystemConfig feeds =
      apply_axis_override(base, SweepAxis::kRfChains, 4.0);
  CHECK(feeds.num_feeds == 4);
  CHECK_THROWS_AS(apply_axis_override(base, SweepAxis::kRfChains, 2.5),
                  ConfigError);
}

TEST_CASE("sweep validates every axis value before running") {
  const SystemConfig config = small_config();
  CHECK_THROWS_AS(sweep(config, SweepAxis::kAperture, {16.0, 35.0}, 1),
                  ConfigError);
  CHECK_THROWS_AS(sweep(config, SweepAxis::kSnrDb, {}, 1), ConfigError);
  CHECK_THROWS_AS(sweep(config, SweepAxis::kSnrDb, {0.0}, 0), ConfigError);
}

TEST_CASE("degenerate sweep aggregation equals the single trial") {
  const SystemConfig config = small_config();
  const SweepResult result = sweep(config, SweepAxis::kSnrDb, {0.0}, 1);
  REQUIRE(result.points.size() == 2);
  REQUIRE(result.trials.size() == 2);

  const TrialResult& proposed = result.trials[0];
  const SweepPoint& point = result.points[0];
  CHECK(point.scheme == Scheme::kProposed);
  CHECK(point.n_ok == 1);
  CHECK(point.n_failed == 0);
  CHECK(point.mean_rate == proposed.rate);
  CHECK(point.mean_crb_theta_lin == proposed.crb_theta_diag);
  CHECK(point.mean_crb_phi_lin == proposed.crb_phi_diag);
  CHECK(point.mean_crb_theta_db ==
        doctest::Approx(10.0 * std::log10(proposed.crb_theta_diag))
            .epsilon(1e-14));
}

TEST_CASE("sweep aggregates are the arithmetic means of their trials") {
  const SystemConfig config = small_config();
  const int n = 4;
  const SweepResult result = sweep(config, SweepAxis::kSnrDb, {5.0}, n);
  double sum_rate = 0.0, sum_theta = 0.0;
  int count = 0;
  for (const TrialResult& trial : result.trials) {
    if (trial.scheme != Scheme::kProposed || !trial.ok) continue;
    sum_rate += trial.rate;
    sum_theta += trial.crb_theta_diag;
    ++count;
  }
  REQUIRE(count == n);
  const SweepPoint& point = result.points[0];
  CHECK(point.mean_rate ==
        doctest::Approx(sum_rate / count).epsilon(1e-12));
  CHECK(point.mean_crb_theta_lin ==
        doctest::Approx(sum_theta / count).epsilon(1e-12));
}

TEST_CASE("sweep results do not depend on the worker count") {
  const SystemConfig config = small_config();
  setenv("HOLO_JCAS_THREADS", "1", 1);
  const SweepResult serial = sweep(config, SweepAxis::kSnrDb, {0.0, 5.0}, 3);
  setenv("HOLO_JCAS_THREADS", "2", 1);
  const SweepResult parallel = sweep(config, SweepAxis::kSnrDb, {0.0, 5.0}, 3);
  unsetenv("HOLO_JCAS_THREADS");

  REQUIRE(serial.points.size() == parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    CHECK(serial.points[i].mean_rate == parallel.points[i].mean_rate);
    CHECK(serial.points[i].mean_crb_theta_lin ==
          parallel.points[i].mean_crb_theta_lin);
    CHECK(serial.points[i].mean_crb_phi_lin ==
          parallel.points[i].mean_crb_phi_lin);
  }
  REQUIRE(serial.trials.size() == parallel.trials.size());
  for (std::size_t i = 0; i < serial.trials.size(); ++i) {
    CHECK(deterministic_fields_equal(serial.trials[i], parallel.trials[i]));
  }
}

TEST_CASE("per-trial failures are recorded, not fatal to the sweep") {
  // A target at grazing incidence makes theta unobservable for every trial.
  SystemConfig config = small_config();
  config.target_theta_rad = M_PI / 2.0;
  const SweepResult result = sweep(config, SweepAxis::kSnrDb, {0.0}, 2);
  for (const SweepPoint& point : result.points) {
    CHECK(point.n_ok == 0);
    CHECK(point.n_failed == 2);
    CHECK(std::isnan(point.mean_rate));
  }
  for (const TrialResult& trial : result.trials) {
    CHECK_FALSE(trial.ok);
    CHECK(trial.error.find("unobservable") != std::string::npos);
  }
}

TEST_CASE("axis names round-trip") {
  CHECK(parse_axis("snr_db") == SweepAxis::kSnrDb);
  CHECK(parse_axis("rf_chains") == SweepAxis::kRfChains);
  CHECK(parse_axis("aperture") == SweepAxis::kAperture);
  CHECK_THROWS_AS(parse_axis("bandwidth"), ConfigError);
  CHECK(std::string(axis_name(SweepAxis::kAperture)) == "aperture");
}
