#include "cellsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "cellsim/metrics.hpp"
#include "cellsim/traffic.hpp"

namespace cellsim {

namespace {

constexpr std::uint64_t kProbeCallId = ~0ull;

struct ReplayOutcome {
  ChannelManager mgr;
  BorrowPlan plan;
};

TrafficProfile make_profile(const ScenarioConfig& cfg, const Topology& topo) {
  TrafficProfile profile;
  profile.mean_holding_s = cfg.traffic.mean_holding_s;
  profile.seed = cfg.seed;
  for (const Cell& cell : topo.cells()) {
    const double load = cell.id == Topology::kReferenceCell ? cfg.traffic.reference_load_factor
                                                            : cfg.traffic.other_load_factor;
    profile.arrival_rate_per_s[cell.id] =
        load * topo.channel_count() / cfg.traffic.mean_holding_s;
  }
  return profile;
}

ReplayOutcome replay(const Topology& topo, const ScenarioConfig& cfg,
                     const std::vector<CallEvent>& events, Strategy strategy) {
  ChannelManager mgr(topo, cfg.inner_fraction);
  std::optional<BorrowPlan> plan;
  std::set<std::uint64_t> admitted;
  const int ref = Topology::kReferenceCell;

  for (const CallEvent& ev : events) {
    if (ev.time_s > cfg.traffic.horizon_s) break;  // state at horizon
    if (ev.kind == CallEvent::Kind::Arrival) {
      if (!plan && ev.cell_id == ref && mgr.free_native_count(ref) == 0) {
        plan = mgr.request_borrow(ref, cfg.borrow_count, strategy);
        if (plan->granted_count() == 0) {
          throw ScenarioError("no borrowable channels available in adjacent cells");
        }
        mgr.apply_plan(*plan);
      }
      if (mgr.admit_call(ev.cell_id, ev.position, ev.call_id)) admitted.insert(ev.call_id);
    } else if (admitted.count(ev.call_id)) {
      mgr.release_call(ev.call_id);
      admitted.erase(ev.call_id);
    }
  }
  if (!plan) {
    throw ScenarioError("traffic never saturated the reference cell; raise the offered load");
  }
  return ReplayOutcome{std::move(mgr), *plan};
}

std::vector<ReportRow> evaluate(ReplayOutcome outcome, const ScenarioConfig& cfg,
                                const Topology& topo, const std::string& scheme) {
  const int ref = Topology::kReferenceCell;
  ChannelManager& mgr = outcome.mgr;

  ChannelId probe = cfg.probe_mode == "native" ? ChannelId{topo.cell(ref).band, 0}
                                               : outcome.plan.granted_channels().front();
  if (!mgr.channel_in_use(ref, probe)) {
    mgr.seize_channel(ref, probe, kProbeCallId, Region::Outer);
  }
  const InterfererActivity activity = mgr.active_cochannel_interferers(ref, probe);

  std::vector<int> active_cells;
  for (const auto& [id, active] : activity.tier1) {
    if (active) active_cells.push_back(id);
  }
  for (const auto& [id, active] : activity.tier2) {
    if (active) active_cells.push_back(id);
  }

  const PropagationParams prop = cfg.propagation_params();
  const OutageThreshold gamma = OutageThreshold::from_db(cfg.gamma_db);
  const double noise_w = cfg.noise.total_noise_w();
  const Point origin = topo.cell(ref).center;

  std::vector<double> azimuths_rad;
  if (cfg.azimuth_average_count > 0) {
    for (int i = 0; i < cfg.azimuth_average_count; ++i) {
      azimuths_rad.push_back(2.0 * std::numbers::pi * i / cfg.azimuth_average_count);
    }
  } else {
    azimuths_rad.push_back(cfg.probe_azimuth_deg * std::numbers::pi / 180.0);
  }

  std::vector<ReportRow> rows;
  int row_index = 0;
  for (double d_km : cfg.sweep.distances()) {
    double sum_sinr = 0.0, sum_cap = 0.0, sum_out = 0.0, sum_mc = 0.0;
    for (double az : azimuths_rad) {
      const Point pos{origin.x + d_km * 1000.0 * std::cos(az),
                      origin.y + d_km * 1000.0 * std::sin(az)};
      const double serving_d = std::max(d_km, cfg.min_eval_distance_km);
      const double s0 = received_power_w(topo.cell(ref).tx_power_w, path_loss_db(prop, serving_d));

      std::vector<double> interference;
      for (int id : active_cells) {
        const Cell& cell = topo.cell(id);
        const double di = std::max(distance_m(pos, cell.center) / 1000.0, cfg.min_eval_distance_km);
        interference.push_back(received_power_w(cell.tx_power_w, path_loss_db(prop, di)));
      }

      const double ratio = sinr(s0, interference, noise_w);
      sum_sinr += ratio;
      sum_cap += capacity_bps_hz(ratio);
      sum_out += outage_closed_form(gamma, s0, interference);
      sum_mc += outage_monte_carlo(gamma, s0, interference, cfg.monte_carlo_samples,
                                   cfg.seed * 1000003ull + static_cast<std::uint64_t>(row_index),
                                   noise_w);
    }
    const double n = static_cast<double>(azimuths_rad.size());
    ReportRow row;
    row.distance_km = d_km;
    row.scheme = scheme;
    row.sinr_db = 10.0 * std::log10(sum_sinr / n);
    row.capacity_bps_hz = sum_cap / n;
    row.outage_prob = sum_out / n;
    row.active_tier1 = activity.active_tier1();
    row.active_tier2 = activity.active_tier2();
    row.outage_mc_noise = sum_mc / n;
    rows.push_back(std::move(row));
    ++row_index;
  }
  return rows;
}

void warn_if_outside_hata_range(double fc_mhz) {
  static std::once_flag flag;
  if (fc_mhz < 150.0 || fc_mhz > 1500.0) {
    std::call_once(flag, [&] {
      std::fprintf(stderr,
                   "note: carrier %.0f MHz is outside the classical Okumura-Hata range "
                   "(150-1500 MHz); the formula is evaluated as printed\n",
                   fc_mhz);
    });
  }
}

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

MetricsReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  warn_if_outside_hata_range(config.fc_mhz);

  const Topology topo = build_topology(config.topology_params());
  const std::vector<CallEvent> events =
      generate_events(make_profile(config, topo), topo, config.traffic.horizon_s);

  ReplayOutcome conventional = replay(topo, config, events, Strategy::None);
  ReplayOutcome proposed = replay(topo, config, events, config.strategy);

  // Both replays share the pre-borrow trajectory, so the grants must match.
  if (conventional.plan.granted_channels() != proposed.plan.granted_channels()) {
    throw ScenarioError("internal: borrow grants diverged between schemes");
  }

  MetricsReport report;
  report.config_hash = config.hash();
  report.seed = config.seed;
  for (ReportRow& row : evaluate(std::move(conventional), config, topo, "conventional")) {
    report.rows.push_back(std::move(row));
  }
  for (ReportRow& row : evaluate(std::move(proposed), config, topo, "proposed")) {
    report.rows.push_back(std::move(row));
  }
  return report;
}

void emit_csv(const MetricsReport& report, std::ostream& out) {
  out << "distance_km,scheme,sinr_db,capacity_bps_hz,outage_prob,active_tier1,active_tier2\n";
  for (const ReportRow& row : report.rows) {
    out << format_g6(row.distance_km) << ',' << row.scheme << ',' << format_g6(row.sinr_db) << ','
        << format_g6(row.capacity_bps_hz) << ',' << format_g6(row.outage_prob) << ','
        << row.active_tier1 << ',' << row.active_tier2 << '\n';
  }
}

void emit_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV to " + path);
  emit_csv(report, out);
  if (!out) throw std::runtime_error("write failure on " + path);
}

std::string emit_summary(const MetricsReport& report) {
  std::map<double, const ReportRow*> conventional, proposed;
  for (const ReportRow& row : report.rows) {
    (row.scheme == "proposed" ? proposed : conventional)[row.distance_km] = &row;
  }

  std::ostringstream out;
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(report.config_hash));
  out << "scenario summary  config=" << hash_hex << "  seed=" << report.seed << "\n";
  out << "delta = proposed - conventional\n";
  out << "distance_km  d_sinr_db  d_capacity  d_outage  outage_eq6_prop  outage_mc_noise_prop\n";

  std::vector<double> d_sinr, d_cap, d_out;
  for (const auto& [d, prop] : proposed) {
    const auto it = conventional.find(d);
    if (it == conventional.end()) continue;
    const ReportRow& conv = *it->second;
    const double ds = prop->sinr_db - conv.sinr_db;
    const double dc = prop->capacity_bps_hz - conv.capacity_bps_hz;
    const double dout = prop->outage_prob - conv.outage_prob;
    d_sinr.push_back(ds);
    d_cap.push_back(dc);
    d_out.push_back(dout);
    out << format_g6(d) << "  " << format_g6(ds) << "  " << format_g6(dc) << "  " << format_g6(dout)
        << "  " << format_g6(prop->outage_prob) << "  " << format_g6(prop->outage_mc_noise) << "\n";
  }

  const auto stat_line = [&](const char* name, auto fn) {
    out << name << "  d_sinr_db=" << format_g6(fn(d_sinr)) << "  d_capacity=" << format_g6(fn(d_cap))
        << "  d_outage=" << format_g6(fn(d_out)) << "\n";
  };
  const auto vmin = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
  };
  const auto vmax = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  };
  const auto vmean = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  stat_line("min ", vmin);
  stat_line("mean", vmean);
  stat_line("max ", vmax);
  return out.str();
}

}  // namespace cellsim
