#include "holojcas/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace holojcas {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "frequency_hz",      "spacing_x_m",
      "spacing_y_m",       "num_elements",
      "num_rf_chains",     "total_power_w",
      "snr_db",            "noise_var_comm_w",
      "noise_var_radar_w", "alpha",
      "beta",              "gamma_re",
      "gamma_im",          "theta_target_deg",
      "phi_target_deg",    "refractive_index",
      "pga_step",          "tolerance",
      "max_outer_iterations", "max_pga_iterations",
      "master_seed",       "sweep",
      "n_trials",          "output_path",
      "output_format"};
  return keys;
}

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number");
  }
  return j.get<double>();
}

int require_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return j.get<int>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (known_keys().count(key) == 0) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  RunConfig run;
  SystemConfig& sys = run.system;

  if (doc.contains("frequency_hz")) {
    sys.frequency_hz = require_number(doc["frequency_hz"], "frequency_hz");
  }
  // Quarter-wavelength default spacing tracks the configured frequency.
  const double quarter_wave = 0.25 * kSpeedOfLight / sys.frequency_hz;
  sys.spacing_x_m = quarter_wave;
  sys.spacing_y_m = quarter_wave;
  if (doc.contains("spacing_x_m")) {
    sys.spacing_x_m = require_number(doc["spacing_x_m"], "spacing_x_m");
  }
  if (doc.contains("spacing_y_m")) {
    sys.spacing_y_m = require_number(doc["spacing_y_m"], "spacing_y_m");
  }
  if (doc.contains("num_elements")) {
    sys.num_elements = require_int(doc["num_elements"], "num_elements");
  }
  if (doc.contains("num_rf_chains")) {
    sys.num_feeds = require_int(doc["num_rf_chains"], "num_rf_chains");
  }
  if (doc.contains("total_power_w")) {
    sys.total_power_w = require_number(doc["total_power_w"], "total_power_w");
  }

  const bool has_snr = doc.contains("snr_db");
  const bool has_noise =
      doc.contains("noise_var_comm_w") || doc.contains("noise_var_radar_w");
  if (has_snr && has_noise) {
    throw ConfigError(
        "snr_db conflicts with explicit noise_var_comm_w/noise_var_radar_w");
  }
  if (has_noise) {
    if (doc.contains("noise_var_comm_w")) {
      sys.noise_var_comm_w =
          require_number(doc["noise_var_comm_w"], "noise_var_comm_w");
    }
    if (doc.contains("noise_var_radar_w")) {
      sys.noise_var_radar_w =
          require_number(doc["noise_var_radar_w"], "noise_var_radar_w");
    }
  } else {
    const double snr_db =
        has_snr ? require_number(doc["snr_db"], "snr_db") : 0.0;
    const double noise = sys.total_power_w / std::pow(10.0, snr_db / 10.0);
    sys.noise_var_comm_w = noise;
    sys.noise_var_radar_w = noise;
  }

  if (doc.contains("alpha")) {
    sys.weight_rate = require_number(doc["alpha"], "alpha");
  }
  if (doc.contains("beta")) {
    sys.weight_crb = require_number(doc["beta"], "beta");
  }
  double gamma_re = sys.reflection_coeff.real();
  double gamma_im = sys.reflection_coeff.imag();
  if (doc.contains("gamma_re")) {
    gamma_re = require_number(doc["gamma_re"], "gamma_re");
  }
  if (doc.contains("gamma_im")) {
    gamma_im = require_number(doc["gamma_im"], "gamma_im");
  }
  sys.reflection_coeff = Complex(gamma_re, gamma_im);
  if (doc.contains("theta_target_deg")) {
    sys.target_theta_rad =
        require_number(doc["theta_target_deg"], "theta_target_deg") * M_PI /
        180.0;
  }
  if (doc.contains("phi_target_deg")) {
    sys.target_phi_rad =
        require_number(doc["phi_target_deg"], "phi_target_deg") * M_PI / 180.0;
  }
  if (doc.contains("refractive_index")) {
    sys.refractive_index =
        require_number(doc["refractive_index"], "refractive_index");
  }
  if (doc.contains("pga_step")) {
    sys.pga_step = require_number(doc["pga_step"], "pga_step");
  }
  if (doc.contains("tolerance")) {
    sys.tolerance = require_number(doc["tolerance"], "tolerance");
  }
  if (doc.contains("max_outer_iterations")) {
    sys.max_outer_iterations =
        require_int(doc["max_outer_iterations"], "max_outer_iterations");
  }
  if (doc.contains("max_pga_iterations")) {
    sys.max_pga_iterations =
        require_int(doc["max_pga_iterations"], "max_pga_iterations");
  }
  if (doc.contains("master_seed")) {
    if (!doc["master_seed"].is_number_unsigned()) {
      throw ConfigError("config key 'master_seed' must be a non-negative integer");
    }
    sys.master_seed = doc["master_seed"].get<std::uint64_t>();
  }

  if (doc.contains("sweep")) {
    const json& sweep_doc = doc["sweep"];
    if (!sweep_doc.is_object()) {
      throw ConfigError("config key 'sweep' must be an object");
    }
    for (const auto& [key, value] : sweep_doc.items()) {
      if (key != "axis" && key != "values") {
        throw ConfigError("unknown sweep key '" + key + "'");
      }
    }
    if (!sweep_doc.contains("axis") || !sweep_doc.contains("values")) {
      throw ConfigError("sweep requires both 'axis' and 'values'");
    }
    SweepSpec spec;
    if (!sweep_doc["axis"].is_string()) {
      throw ConfigError("sweep 'axis' must be a string");
    }
    spec.axis = parse_axis(sweep_doc["axis"].get<std::string>());
    if (!sweep_doc["values"].is_array() || sweep_doc["values"].empty()) {
      throw ConfigError("sweep 'values' must be a non-empty array");
    }
    for (const json& v : sweep_doc["values"]) {
      spec.values.push_back(require_number(v, "sweep values"));
    }
    run.sweep = std::move(spec);
  }

  if (doc.contains("n_trials")) {
    run.n_trials = require_int(doc["n_trials"], "n_trials");
    if (run.n_trials < 1) throw ConfigError("n_trials must be >= 1");
  }
  if (doc.contains("output_path")) {
    if (!doc["output_path"].is_string()) {
      throw ConfigError("config key 'output_path' must be a string");
    }
    run.output_path = doc["output_path"].get<std::string>();
  }
  if (doc.contains("output_format")) {
    if (!doc["output_format"].is_string()) {
      throw ConfigError("config key 'output_format' must be a string");
    }
    const std::string format = doc["output_format"].get<std::string>();
    if (format == "csv") {
      run.format = OutputFormat::kCsv;
    } else if (format == "json") {
      run.format = OutputFormat::kJson;
    } else {
      throw ConfigError("output_format must be 'csv' or 'json'");
    }
  }

  sys.validate();
  if (run.sweep) {
    for (double value : run.sweep->values) {
      apply_axis_override(sys, run.sweep->axis, value);  // validates
    }
  }
  return run;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace holojcas
