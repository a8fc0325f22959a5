#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cellsim/scenario.hpp"
#include "json.hpp"

namespace cellsim {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& scope,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("unknown config key: " + scope + key);
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

double NoiseModel::total_noise_w() const {
  if (noise_w) return *noise_w;
  constexpr double kBoltzmann = 1.380649e-23;
  return kBoltzmann * temperature_k * bandwidth_hz;
}

std::vector<double> SweepSpec::distances() const {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((max_km - min_km) / step_km + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) out.push_back(min_km + i * step_km);
  return out;
}

void ScenarioConfig::validate() const {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field " + field + ": " + why);
  };
  if (cells_per_cluster != 7) fail("cells_per_cluster", "only the 7-cell cluster is supported");
  if (reused_frequencies != 3) fail("reused_frequencies", "only reuse factor 3 is supported");
  if (fc_mhz <= 0.0) fail("fc_mhz", "must be positive");
  if (tx_power_w <= 0.0) fail("tx_power_w", "must be positive");
  if (bs_height_m <= 0.0) fail("bs_height_m", "must be positive");
  if (mobile_height_m < 0.0) fail("mobile_height_m", "must be >= 0");
  if (cell_radius_km <= 0.0) fail("cell_radius_km", "must be positive");
  if (channel_count_per_band < 1) fail("channel_count_per_band", "must be >= 1");
  if (inner_fraction <= 0.0 || inner_fraction > 1.0) fail("inner_fraction", "must be in (0, 1]");
  if (min_eval_distance_km <= 0.0) fail("min_eval_distance_km", "must be positive");
  if (noise.temperature_k <= 0.0) fail("noise.temperature_k", "must be positive");
  if (noise.bandwidth_hz <= 0.0) fail("noise.bandwidth_hz", "must be positive");
  if (noise.noise_w && *noise.noise_w <= 0.0) fail("noise.noise_w", "must be positive");
  if (traffic.reference_load_factor <= 0.0) fail("traffic.reference_load_factor", "must be positive");
  if (traffic.other_load_factor < 0.0) fail("traffic.other_load_factor", "must be >= 0");
  if (traffic.mean_holding_s <= 0.0) fail("traffic.mean_holding_s", "must be positive");
  if (traffic.horizon_s <= 0.0) fail("traffic.horizon_s", "must be positive");
  if (sweep.step_km <= 0.0) fail("sweep.step_km", "must be positive");
  if (sweep.max_km < sweep.min_km) fail("sweep.max_km", "must be >= sweep.min_km");
  if (sweep.min_km < min_eval_distance_km) fail("sweep.min_km", "must be >= min_eval_distance_km");
  if (borrow_count < 1) fail("borrow_count", "must be >= 1");
  if (monte_carlo_samples < 10000) fail("monte_carlo_samples", "must be >= 10000");
  if (azimuth_average_count < 0) fail("azimuth_average_count", "must be >= 0");
  if (probe_mode != "borrowed" && probe_mode != "native") {
    fail("probe_mode", "must be \"borrowed\" or \"native\"");
  }
}

TopologyParams ScenarioConfig::topology_params() const {
  TopologyParams p;
  p.cell_radius_m = cell_radius_km * 1000.0;
  p.bs_height_m = bs_height_m;
  p.tx_power_w = tx_power_w;
  p.channel_count_per_band = channel_count_per_band;
  return p;
}

PropagationParams ScenarioConfig::propagation_params() const {
  return PropagationParams{fc_mhz, bs_height_m, mobile_height_m};
}

ScenarioConfig parse_config(const std::string& text) {
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  json root = trimmed.empty() ? json::object() : json::parse(trimmed);
  if (!root.is_object()) throw std::invalid_argument("config root must be an object");

  require_keys(root, "",
               {"cells_per_cluster", "reused_frequencies", "gamma_db", "fc_mhz", "tx_power_w",
                "bs_height_m", "mobile_height_m", "cell_radius_km", "channel_count_per_band",
                "inner_fraction", "min_eval_distance_km", "noise", "traffic", "strategy", "sweep",
                "borrow_count", "monte_carlo_samples", "seed", "probe_azimuth_deg",
                "azimuth_average_count", "probe_mode"});

  ScenarioConfig cfg;
  read(root, "cells_per_cluster", cfg.cells_per_cluster);
  read(root, "reused_frequencies", cfg.reused_frequencies);
  read(root, "gamma_db", cfg.gamma_db);
  read(root, "fc_mhz", cfg.fc_mhz);
  read(root, "tx_power_w", cfg.tx_power_w);
  read(root, "bs_height_m", cfg.bs_height_m);
  read(root, "mobile_height_m", cfg.mobile_height_m);
  read(root, "cell_radius_km", cfg.cell_radius_km);
  read(root, "channel_count_per_band", cfg.channel_count_per_band);
  read(root, "inner_fraction", cfg.inner_fraction);
  read(root, "min_eval_distance_km", cfg.min_eval_distance_km);
  read(root, "borrow_count", cfg.borrow_count);
  read(root, "monte_carlo_samples", cfg.monte_carlo_samples);
  read(root, "seed", cfg.seed);
  read(root, "probe_azimuth_deg", cfg.probe_azimuth_deg);
  read(root, "azimuth_average_count", cfg.azimuth_average_count);
  read(root, "probe_mode", cfg.probe_mode);

  if (root.contains("strategy")) cfg.strategy = parse_strategy(root.at("strategy").get<std::string>());

  if (root.contains("noise")) {
    const json& n = root.at("noise");
    require_keys(n, "noise.", {"temperature_k", "bandwidth_hz", "noise_w"});
    read(n, "temperature_k", cfg.noise.temperature_k);
    read(n, "bandwidth_hz", cfg.noise.bandwidth_hz);
    if (n.contains("noise_w")) cfg.noise.noise_w = n.at("noise_w").get<double>();
  }
  if (root.contains("traffic")) {
    const json& t = root.at("traffic");
    require_keys(t, "traffic.",
                 {"reference_load_factor", "other_load_factor", "mean_holding_s", "horizon_s"});
    read(t, "reference_load_factor", cfg.traffic.reference_load_factor);
    read(t, "other_load_factor", cfg.traffic.other_load_factor);
    read(t, "mean_holding_s", cfg.traffic.mean_holding_s);
    read(t, "horizon_s", cfg.traffic.horizon_s);
  }
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    require_keys(s, "sweep.", {"min_km", "max_km", "step_km"});
    read(s, "min_km", cfg.sweep.min_km);
    read(s, "max_km", cfg.sweep.max_km);
    read(s, "step_km", cfg.sweep.step_km);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& config) {
  json root;
  root["cells_per_cluster"] = config.cells_per_cluster;
  root["reused_frequencies"] = config.reused_frequencies;
  root["gamma_db"] = config.gamma_db;
  root["fc_mhz"] = config.fc_mhz;
  root["tx_power_w"] = config.tx_power_w;
  root["bs_height_m"] = config.bs_height_m;
  root["mobile_height_m"] = config.mobile_height_m;
  root["cell_radius_km"] = config.cell_radius_km;
  root["channel_count_per_band"] = config.channel_count_per_band;
  root["inner_fraction"] = config.inner_fraction;
  root["min_eval_distance_km"] = config.min_eval_distance_km;
  root["noise"]["temperature_k"] = config.noise.temperature_k;
  root["noise"]["bandwidth_hz"] = config.noise.bandwidth_hz;
  if (config.noise.noise_w) root["noise"]["noise_w"] = *config.noise.noise_w;
  root["traffic"]["reference_load_factor"] = config.traffic.reference_load_factor;
  root["traffic"]["other_load_factor"] = config.traffic.other_load_factor;
  root["traffic"]["mean_holding_s"] = config.traffic.mean_holding_s;
  root["traffic"]["horizon_s"] = config.traffic.horizon_s;
  root["strategy"] = strategy_name(config.strategy);
  root["sweep"]["min_km"] = config.sweep.min_km;
  root["sweep"]["max_km"] = config.sweep.max_km;
  root["sweep"]["step_km"] = config.sweep.step_km;
  root["borrow_count"] = config.borrow_count;
  root["monte_carlo_samples"] = config.monte_carlo_samples;
  root["seed"] = config.seed;
  root["probe_azimuth_deg"] = config.probe_azimuth_deg;
  root["azimuth_average_count"] = config.azimuth_average_count;
  root["probe_mode"] = config.probe_mode;
  return root.dump(2) + "\n";
}

std::uint64_t ScenarioConfig::hash() const {
  const std::string text = dump_config(*this);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace cellsim
