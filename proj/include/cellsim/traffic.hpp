#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cellsim/geometry.hpp"
#include "cellsim/topology.hpp"

namespace cellsim {

struct CallEvent {
  enum class Kind { Arrival, Departure };
  Kind kind = Kind::Arrival;
  double time_s = 0.0;
  int cell_id = 0;
  Point position;  // Arrival only
  std::uint64_t call_id = 0;
};

struct TrafficProfile {
  std::map<int, double> arrival_rate_per_s;  // by cell id; missing cells get 0
  double mean_holding_s = 100.0;
  std::uint64_t seed = 1;
};

// Poisson arrivals per cell, exponential holding times, user positions uniform
// over the cell hexagon. Fully reproducible from the seed; events sorted by
// (time, call id, kind). Departures may fall past the horizon.
std::vector<CallEvent> generate_events(const TrafficProfile& profile, const Topology& topo,
                                       double horizon_s);

}  // namespace cellsim
