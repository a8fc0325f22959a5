#include "cellsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace cellsim {

namespace {

// Inverse-CDF exponential keeps the event stream stable across stdlib versions.
double sample_exponential(std::mt19937_64& rng, double mean) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return -mean * std::log1p(-uni(rng));
}

Point sample_in_hexagon(std::mt19937_64& rng, const Cell& cell) {
  const double sqrt3 = std::sqrt(3.0);
  std::uniform_real_distribution<double> ux(-cell.radius_m, cell.radius_m);
  std::uniform_real_distribution<double> uy(-sqrt3 / 2.0 * cell.radius_m,
                                            sqrt3 / 2.0 * cell.radius_m);
  for (;;) {
    const Point p{cell.center.x + ux(rng), cell.center.y + uy(rng)};
    if (point_in_hexagon(p, cell.center, cell.radius_m)) return p;
  }
}

}  // namespace

std::vector<CallEvent> generate_events(const TrafficProfile& profile, const Topology& topo,
                                       double horizon_s) {
  if (horizon_s <= 0.0) throw std::invalid_argument("horizon_s must be positive");
  if (profile.mean_holding_s <= 0.0) throw std::invalid_argument("mean_holding_s must be positive");
  for (const auto& [cell_id, rate] : profile.arrival_rate_per_s) {
    if (rate < 0.0) throw std::invalid_argument("arrival rate must be >= 0");
    topo.cell(cell_id);
  }

  struct RawCall {
    double arrival_s;
    double holding_s;
    Point position;
    int cell_id;
  };
  std::vector<RawCall> raw;

  for (const Cell& cell : topo.cells()) {
    const auto it = profile.arrival_rate_per_s.find(cell.id);
    if (it == profile.arrival_rate_per_s.end() || it->second <= 0.0) continue;
    const double rate = it->second;
    std::seed_seq seq{static_cast<std::uint64_t>(profile.seed),
                      static_cast<std::uint64_t>(cell.id)};
    std::mt19937_64 rng(seq);
    double t = 0.0;
    for (;;) {
      t += sample_exponential(rng, 1.0 / rate);
      if (t > horizon_s) break;
      raw.push_back(RawCall{t, sample_exponential(rng, profile.mean_holding_s),
                            sample_in_hexagon(rng, cell), cell.id});
    }
  }

  std::sort(raw.begin(), raw.end(), [](const RawCall& a, const RawCall& b) {
    return std::tie(a.arrival_s, a.cell_id) < std::tie(b.arrival_s, b.cell_id);
  });

  std::vector<CallEvent> events;
  events.reserve(raw.size() * 2);
  std::uint64_t next_id = 1;
  for (const RawCall& r : raw) {
    const std::uint64_t id = next_id++;
    events.push_back(CallEvent{CallEvent::Kind::Arrival, r.arrival_s, r.cell_id, r.position, id});
    events.push_back(
        CallEvent{CallEvent::Kind::Departure, r.arrival_s + r.holding_s, r.cell_id, Point{}, id});
  }
  std::sort(events.begin(), events.end(), [](const CallEvent& a, const CallEvent& b) {
    const int ka = a.kind == CallEvent::Kind::Arrival ? 0 : 1;
    const int kb = b.kind == CallEvent::Kind::Arrival ? 0 : 1;
    return std::tie(a.time_s, a.call_id, ka) < std::tie(b.time_s, b.call_id, kb);
  });
  return events;
}

}  // namespace cellsim
