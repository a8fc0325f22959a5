#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cellsim/channel_manager.hpp"
#include "cellsim/propagation.hpp"
#include "cellsim/topology.hpp"

namespace cellsim {

struct NoiseModel {
  double temperature_k = 290.0;
  double bandwidth_hz = 200e3;
  std::optional<double> noise_w;  // overrides kTB when set
  double total_noise_w() const;
};

struct TrafficSpec {
  double reference_load_factor = 1.5;  // offered load / native channel count
  double other_load_factor = 0.5;
  double mean_holding_s = 100.0;
  double horizon_s = 600.0;
};

struct SweepSpec {
  double min_km = 0.05;
  double max_km = 0.85;
  double step_km = 0.05;
  std::vector<double> distances() const;
};

struct ScenarioConfig {
  int cells_per_cluster = 7;
  int reused_frequencies = 3;
  double gamma_db = 9.0;
  double fc_mhz = 1800.0;
  double tx_power_w = 1500.0;
  double bs_height_m = 100.0;
  double mobile_height_m = 5.0;
  double cell_radius_km = 1.0;
  int channel_count_per_band = 10;
  double inner_fraction = 0.5;
  double min_eval_distance_km = 0.05;
  NoiseModel noise;
  TrafficSpec traffic;
  Strategy strategy = Strategy::Auto;
  SweepSpec sweep;
  int borrow_count = 4;
  std::size_t monte_carlo_samples = 100000;
  std::uint64_t seed = 1;
  double probe_azimuth_deg = 30.0;  // toward cell 2
  int azimuth_average_count = 0;    // 0 = single fixed azimuth
  std::string probe_mode = "borrowed";  // or "native"

  void validate() const;  // throws std::invalid_argument naming the bad field
  std::uint64_t hash() const;
  TopologyParams topology_params() const;
  PropagationParams propagation_params() const;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string dump_config(const ScenarioConfig& config);  // canonical JSON

struct ReportRow {
  double distance_km = 0.0;
  std::string scheme;  // "conventional" or "proposed"
  double sinr_db = 0.0;
  double capacity_bps_hz = 0.0;
  double outage_prob = 0.0;
  int active_tier1 = 0;
  int active_tier2 = 0;
  double outage_mc_noise = 0.0;  // noise-inclusive Monte-Carlo outage (summary only)
};

struct MetricsReport {
  std::vector<ReportRow> rows;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distance-sweep experiment: saturate the reference cell, borrow under the
// configured strategy, then evaluate a probe user per distance for the
// proposed scheme and for the conventional (no-declination) baseline on the
// identical traffic replay.
MetricsReport run_scenario(const ScenarioConfig& config);

void emit_csv(const MetricsReport& report, std::ostream& out);
void emit_csv(const MetricsReport& report, const std::string& path);
std::string emit_summary(const MetricsReport& report);

}  // namespace cellsim
