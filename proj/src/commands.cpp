#include "holojcas/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "holojcas/validation.hpp"

namespace holojcas {

namespace {

using nlohmann::json;

json trace_row_json(const IterationRecord& record) {
  return json{{"iteration", record.iteration},
              {"rate", record.rate},
              {"crb_theta_db", 10.0 * std::log10(record.crb_theta)},
              {"crb_phi_db", 10.0 * std::log10(record.crb_phi)},
              {"objective", record.weighted_objective},
              {"tx_power", record.tx_power}};
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path parent =
      target.parent_path().empty() ? fs::path(".") : target.parent_path();
  const fs::path temp = parent / (target.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + temp.string() + "' for writing");
    out << content;
    if (!out) throw Error("write failed for '" + temp.string() + "'");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw Error("cannot rename '" + temp.string() + "' to '" + path + "': " +
                ec.message());
  }
}

std::string render_convergence(const RunConfig& config) {
  const SystemConfig& sys = config.system;
  const ArrayGeometry geometry = build_geometry(sys);
  Rng channel_rng(sys.master_seed, 0);  // channel stream of trial 0
  const Channel channel = rayleigh_channel(sys.num_elements, channel_rng);
  const auto [state, trace] = optimize(sys, channel.h, geometry);
  (void)state;

  if (config.format == OutputFormat::kJson) {
    json rows = json::array();
    for (const IterationRecord& record : trace.records) {
      rows.push_back(trace_row_json(record));
    }
    return rows.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "iteration,rate,crb_theta_db,crb_phi_db,objective,tx_power\n";
  for (const IterationRecord& record : trace.records) {
    out << record.iteration << ',' << format_double(record.rate) << ','
        << format_double(10.0 * std::log10(record.crb_theta)) << ','
        << format_double(10.0 * std::log10(record.crb_phi)) << ','
        << format_double(record.weighted_objective) << ','
        << format_double(record.tx_power) << '\n';
  }
  return out.str();
}

std::string render_sweep(const RunConfig& config) {
  if (!config.sweep) {
    throw ConfigError("sweep command requires a 'sweep' section in the config");
  }
  const SweepResult result = sweep(config.system, config.sweep->axis,
                                   config.sweep->values, config.n_trials);

  if (config.format == OutputFormat::kJson) {
    json rows = json::array();
    for (const SweepPoint& point : result.points) {
      rows.push_back(json{{"axis", axis_name(result.axis)},
                          {"axis_value", point.axis_value},
                          {"scheme", scheme_name(point.scheme)},
                          {"mean_rate", point.mean_rate},
                          {"mean_crb_theta_lin", point.mean_crb_theta_lin},
                          {"mean_crb_phi_lin", point.mean_crb_phi_lin},
                          {"mean_crb_theta_db", point.mean_crb_theta_db},
                          {"mean_crb_phi_db", point.mean_crb_phi_db},
                          {"mean_crb_theta_db_alt", point.mean_crb_theta_db_alt},
                          {"mean_crb_phi_db_alt", point.mean_crb_phi_db_alt},
                          {"n_ok", point.n_ok},
                          {"n_failed", point.n_failed}});
    }
    return rows.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "axis_value,scheme,mean_rate,mean_crb_theta_lin,mean_crb_phi_lin,"
         "mean_crb_theta_db,mean_crb_phi_db,mean_crb_theta_db_alt,"
         "mean_crb_phi_db_alt,n_ok,n_failed\n";
  for (const SweepPoint& point : result.points) {
    out << format_double(point.axis_value) << ',' << scheme_name(point.scheme)
        << ',' << format_double(point.mean_rate) << ','
        << format_double(point.mean_crb_theta_lin) << ','
        << format_double(point.mean_crb_phi_lin) << ','
        << format_double(point.mean_crb_theta_db) << ','
        << format_double(point.mean_crb_phi_db) << ','
        << format_double(point.mean_crb_theta_db_alt) << ','
        << format_double(point.mean_crb_phi_db_alt) << ',' << point.n_ok << ','
        << point.n_failed << '\n';
  }
  return out.str();
}

int cmd_convergence(const RunConfig& config, const std::string& output_path) {
  try {
    const std::string content = render_convergence(config);
    write_file_atomic(output_path, content);
  } catch (const std::exception& e) {
    std::cerr << "convergence: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_sweep(const RunConfig& config, const std::string& output_path) {
  try {
    const std::string content = render_sweep(config);
    write_file_atomic(output_path, content);
  } catch (const std::exception& e) {
    std::cerr << "sweep: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_validate() {
  int failures = 0;
  try {
    for (const CheckResult& check : run_validation_suite()) {
      std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name
                << "  (" << check.detail << ")\n";
      if (!check.passed) ++failures;
    }
  } catch (const std::exception& e) {
    std::cerr << "validate: " << e.what() << '\n';
    return 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace holojcas
