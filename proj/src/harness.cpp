#include "holojcas/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

namespace holojcas {

namespace {

// Disjoint sub-streams per trial: even ids feed the channel, odd ids feed the
// benchmark's random holographic weights.
std::uint64_t channel_stream(int trial_index) {
  return 2ULL * static_cast<std::uint64_t>(trial_index);
}

std::uint64_t benchmark_stream(int trial_index) {
  return 2ULL * static_cast<std::uint64_t>(trial_index) + 1ULL;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nan("");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

TrialResult failed_trial(int trial_index, Scheme scheme, const std::string& why,
                         std::uint64_t channel_hash) {
  TrialResult result;
  result.trial_index = trial_index;
  result.scheme = scheme;
  result.ok = false;
  result.error = why;
  result.channel_hash = channel_hash;
  return result;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::kProposed ? "proposed" : "benchmark";
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSnrDb:
      return "snr_db";
    case SweepAxis::kRfChains:
      return "rf_chains";
    case SweepAxis::kAperture:
      return "aperture";
  }
  return "unknown";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "snr_db") return SweepAxis::kSnrDb;
  if (name == "rf_chains") return SweepAxis::kRfChains;
  if (name == "aperture") return SweepAxis::kAperture;
  throw ConfigError("unknown sweep axis '" + name +
                    "' (expected snr_db, rf_chains, or aperture)");
}

std::uint64_t hash_vector(const ComplexVector& v) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(v.data());
  const std::size_t n = static_cast<std::size_t>(v.size()) * sizeof(Complex);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

BeamformerState benchmark_solution(const SystemConfig& config,
                                   const ComplexVector& h,
                                   const ArrayGeometry& geometry, Rng& rng) {
  config.validate();
  RealVector w(config.num_elements);
  for (int i = 0; i < config.num_elements; ++i) w(i) = rng.next_double();

  const ComplexMatrix w_matrix =
      w.cast<Complex>().asDiagonal() * geometry.phase_matrix;
  const ComplexVector g = w_matrix.adjoint() * h;
  const ComplexVector v =
      update_digital(g * g.adjoint(), w_matrix, config.total_power_w);
  return make_beamformer_state(w, v, geometry.phase_matrix);
}

std::pair<TrialResult, TrialResult> run_trial(const SystemConfig& config,
                                              int trial_index) {
  config.validate();
  const ArrayGeometry geometry = build_geometry(config);
  const SteeringBundle bundle = make_steering_bundle(
      config.target_theta_rad, config.target_phi_rad, config);

  Rng channel_rng(config.master_seed, channel_stream(trial_index));
  const Channel channel = rayleigh_channel(config.num_elements, channel_rng);
  const std::uint64_t channel_hash = hash_vector(channel.h);

  const auto fill_metrics = [&](TrialResult& result,
                                const BeamformerState& state) {
    const ObjectiveBreakdown breakdown =
        evaluate_objective(state, channel.h, bundle, config);
    const FimReport report = crb(bundle, state.W, state.v_d,
                                 config.reflection_coeff,
                                 config.noise_var_radar_w);
    result.rate = breakdown.rate;
    result.crb_theta_diag = breakdown.crb_theta;
    result.crb_phi_diag = breakdown.crb_phi;
    result.crb_theta_full = report.crb_theta_full;
    result.crb_phi_full = report.crb_phi_full;
    result.weighted_objective = breakdown.weighted_objective;
    result.ok = true;
  };

  TrialResult proposed;
  {
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto [state, trace] = optimize(config, channel.h, geometry);
      proposed.trial_index = trial_index;
      proposed.scheme = Scheme::kProposed;
      proposed.channel_hash = channel_hash;
      proposed.outer_iterations = static_cast<int>(trace.records.size());
      proposed.tolerance_met = trace.reason == StopReason::kToleranceMet;
      fill_metrics(proposed, state);
    } catch (const Error& e) {
      proposed = failed_trial(trial_index, Scheme::kProposed, e.what(),
                              channel_hash);
    }
    proposed.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }

  TrialResult benchmark;
  {
    const auto start = std::chrono::steady_clock::now();
    try {
      Rng weight_rng(config.master_seed, benchmark_stream(trial_index));
      const BeamformerState state =
          benchmark_solution(config, channel.h, geometry, weight_rng);
      benchmark.trial_index = trial_index;
      benchmark.scheme = Scheme::kBenchmark;
      benchmark.channel_hash = channel_hash;
      benchmark.tolerance_met = true;  // nothing to converge
      fill_metrics(benchmark, state);
    } catch (const Error& e) {
      benchmark = failed_trial(trial_index, Scheme::kBenchmark, e.what(),
                               channel_hash);
    }
    benchmark.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return {proposed, benchmark};
}

SystemConfig apply_axis_override(SystemConfig config, SweepAxis axis,
                                 double value) {
  switch (axis) {
    case SweepAxis::kSnrDb: {
      const double noise = config.total_power_w / std::pow(10.0, value / 10.0);
      config.noise_var_comm_w = noise;
      config.noise_var_radar_w = noise;
      break;
    }
    case SweepAxis::kRfChains: {
      if (value != std::floor(value)) {
        throw ConfigError("rf_chains sweep values must be integers");
      }
      config.num_feeds = static_cast<int>(value);
      break;
    }
    case SweepAxis::kAperture: {
      if (value != std::floor(value)) {
        throw ConfigError("aperture sweep values must be integers");
      }
      config.num_elements = static_cast<int>(value);
      break;
    }
  }
  config.validate();
  return config;
}

int worker_count(int n_tasks) {
  int limit = static_cast<int>(std::thread::hardware_concurrency());
  if (limit < 1) limit = 1;
  if (const char* env = std::getenv("HOLO_JCAS_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) limit = requested;
  }
  return std::max(1, std::min(limit, n_tasks));
}

SweepResult sweep(const SystemConfig& config, SweepAxis axis,
                  const std::vector<double>& values, int n_trials) {
  if (values.empty()) throw ConfigError("sweep: values must be non-empty");
  if (n_trials < 1) throw ConfigError("sweep: n_trials must be >= 1");

  // Validate every point before any trial runs.
  std::vector<SystemConfig> point_configs;
  point_configs.reserve(values.size());
  for (double value : values) {
    point_configs.push_back(apply_axis_override(config, axis, value));
  }

  SweepResult result;
  result.axis = axis;
  result.values = values;

  for (std::size_t p = 0; p < values.size(); ++p) {
    const SystemConfig& point_config = point_configs[p];
    std::vector<std::pair<TrialResult, TrialResult>> trials(n_trials);

    std::atomic<int> next{0};
    const int n_workers = worker_count(n_trials);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) {
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < n_trials; i = next.fetch_add(1)) {
          trials[static_cast<std::size_t>(i)] = run_trial(point_config, i);
        }
      });
    }
    for (auto& worker : pool) worker.join();

    for (Scheme scheme : {Scheme::kProposed, Scheme::kBenchmark}) {
      SweepPoint point;
      point.axis_value = values[p];
      point.scheme = scheme;
      std::vector<double> rates, crb_theta, crb_phi, crb_theta_db, crb_phi_db;
      for (const auto& [proposed, benchmark] : trials) {
        const TrialResult& trial =
            scheme == Scheme::kProposed ? proposed : benchmark;
        if (!trial.ok) {
          ++point.n_failed;
          continue;
        }
        ++point.n_ok;
        rates.push_back(trial.rate);
        crb_theta.push_back(trial.crb_theta_diag);
        crb_phi.push_back(trial.crb_phi_diag);
        crb_theta_db.push_back(to_db(trial.crb_theta_diag));
        crb_phi_db.push_back(to_db(trial.crb_phi_diag));
      }
      point.mean_rate = mean_of(rates);
      point.mean_crb_theta_lin = mean_of(crb_theta);
      point.mean_crb_phi_lin = mean_of(crb_phi);
      point.mean_crb_theta_db = to_db(point.mean_crb_theta_lin);
      point.mean_crb_phi_db = to_db(point.mean_crb_phi_lin);
      point.mean_crb_theta_db_alt = mean_of(crb_theta_db);
      point.mean_crb_phi_db_alt = mean_of(crb_phi_db);
      result.points.push_back(point);
    }
    for (auto& [proposed, benchmark] : trials) {
      result.trials.push_back(std::move(proposed));
      result.trials.push_back(std::move(benchmark));
    }
  }
  return result;
}

}  // namespace holojcas
