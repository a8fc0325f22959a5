#include <stdexcept>
#include <initializer_list>
#include <algorithm>
#include <cmath>
#include <map>

#include "cellsim/traffic.hpp"
#include "doctest.h"

using namespace cellsim;

namespace {

Topology make_topo() {
  TopologyParams p;
  p.cell_radius_m = 1000.0;
  p.channel_count_per_band = 5;
  return build_topology(p);
}

}  // namespace

TEST_CASE("zero rates produce no events") {
  const Topology topo = make_topo();
  TrafficProfile profile;
  profile.seed = 3;
  CHECK(generate_events(profile, topo, 100.0).empty());
  profile.arrival_rate_per_s[1] = 0.0;
  CHECK(generate_events(profile, topo, 100.0).empty());
}

TEST_CASE("invalid profiles are rejected") {
  const Topology topo = make_topo();
  TrafficProfile profile;
  profile.arrival_rate_per_s[1] = -0.1;
  CHECK_THROWS_AS(generate_events(profile, topo, 100.0), std::invalid_argument);
  profile.arrival_rate_per_s[1] = 0.1;
  profile.mean_holding_s = 0.0;
  CHECK_THROWS_AS(generate_events(profile, topo, 100.0), std::invalid_argument);
  profile.mean_holding_s = 10.0;
  CHECK_THROWS_AS(generate_events(profile, topo, 0.0), std::invalid_argument);
  profile.arrival_rate_per_s[9999] = 0.1;
  CHECK_THROWS_AS(generate_events(profile, topo, 100.0), std::out_of_range);
}

TEST_CASE("same seed reproduces the identical event list") {
  const Topology topo = make_topo();
  TrafficProfile profile;
  profile.arrival_rate_per_s[1] = 0.2;
  profile.arrival_rate_per_s[2] = 0.1;
  profile.mean_holding_s = 30.0;
  profile.seed = 42;
  const auto a = generate_events(profile, topo, 500.0);
  const auto b = generate_events(profile, topo, 500.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].kind == b[i].kind);
    CHECK(a[i].time_s == b[i].time_s);
    CHECK(a[i].cell_id == b[i].cell_id);
    CHECK(a[i].call_id == b[i].call_id);
    CHECK(a[i].position.x == b[i].position.x);
    CHECK(a[i].position.y == b[i].position.y);
  }

  profile.seed = 43;
  const auto c = generate_events(profile, topo, 500.0);
  CHECK(a.size() != c.size());  // different seed, different stream (overwhelmingly)
}

TEST_CASE("event stream structure: ordering and arrival/departure pairing") {
  const Topology topo = make_topo();
  TrafficProfile profile;
  profile.arrival_rate_per_s[1] = 0.3;
  profile.arrival_rate_per_s[4] = 0.2;
  profile.mean_holding_s = 20.0;
  profile.seed = 7;
  const auto events = generate_events(profile, topo, 400.0);
  REQUIRE_FALSE(events.empty());

  CHECK(std::is_sorted(events.begin(), events.end(), [](const CallEvent& a, const CallEvent& b) {
    return a.time_s < b.time_s;
  }));

  std::map<std::uint64_t, double> arrival_time;
  for (const CallEvent& ev : events) {
    if (ev.kind == CallEvent::Kind::Arrival) {
      CHECK(point_in_hexagon(ev.position, topo.cell(ev.cell_id).center,
                             topo.cell(ev.cell_id).radius_m));
      CHECK(arrival_time.emplace(ev.call_id, ev.time_s).second);
    } else {
      REQUIRE(arrival_time.count(ev.call_id) == 1);
      CHECK(ev.time_s > arrival_time[ev.call_id]);
    }
  }
  // every arrival has exactly one departure
  std::size_t departures = 0;
  for (const CallEvent& ev : events) {
    if (ev.kind == CallEvent::Kind::Departure) ++departures;
  }
  CHECK(departures == arrival_time.size());
}

TEST_CASE("property: Poisson arrival counts concentrate around lambda*T") {
  const Topology topo = make_topo();
  const double rate = 0.1, horizon = 300.0;
  const double expected = rate * horizon;
  double total = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    TrafficProfile profile;
    profile.arrival_rate_per_s[1] = rate;
    profile.seed = 1000 + static_cast<std::uint64_t>(s);
    const auto events = generate_events(profile, topo, horizon);
    std::size_t arrivals = 0;
    for (const CallEvent& ev : events) {
      if (ev.kind == CallEvent::Kind::Arrival) ++arrivals;
    }
    total += static_cast<double>(arrivals);
  }
  const double mean = total / seeds;
  CHECK(std::fabs(mean - expected) < 3.0 * std::sqrt(expected));
}
