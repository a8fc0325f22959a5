// Acceptance suite: one pass/fail line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cellsim/channel_manager.hpp"
#include "cellsim/metrics.hpp"
#include "cellsim/propagation.hpp"
#include "cellsim/scenario.hpp"
#include "cellsim/topology.hpp"

using namespace cellsim;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("criterion %d: %-55s %s%s%s\n", number, name.c_str(), ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  if (!ok) ++g_failures;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---- criterion 1 -----------------------------------------------------------

void criterion_hata_spot_value() {
  const PropagationParams p{1800.0, 100.0, 5.0};
  volatile double warmup = path_loss_db(p, 1.0);
  (void)warmup;
  const auto t0 = Clock::now();
  const double loss = path_loss_db(p, 1.0);
  const double elapsed = ms_since(t0);
  const bool ok = std::fabs(loss - 117.292) < 0.005 && elapsed < 1.0;
  std::ostringstream detail;
  detail << "loss=" << loss << " dB, " << elapsed << " ms";
  report(1, "Okumura-Hata spot value (Table I, d = 1 km)", ok, detail.str());
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_outage_identity() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uni(0.01, 20.0);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const OutageThreshold g = OutageThreshold::from_db(uni(rng));
    const double s = uni(rng);
    std::vector<double> ints(1 + rng() % 10);
    for (double& v : ints) v = uni(rng) * 1e-2;
    double product = 1.0;
    for (double v : ints) product *= std::exp(-g.gamma_linear / s * v);
    const double collapsed = outage_closed_form(g, s, ints);
    const double expect = 1.0 - product;
    const double denom = std::max(std::fabs(expect), 1e-300);
    if (std::fabs(collapsed - expect) / denom > 1e-12) ok = false;
  }
  report(2, "outage product form == collapsed form (1000 draws)", ok);
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_outage_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> uni(0.1, 5.0);
  const std::size_t samples = 1000000;
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const OutageThreshold g = OutageThreshold::from_db(uni(rng));
    const double s = uni(rng);
    std::vector<double> ints(1 + rng() % 5);
    for (double& v : ints) v = uni(rng) * 0.05;
    const double p = outage_closed_form(g, s, ints);
    const double est = outage_monte_carlo(g, s, ints, samples, 3000 + i);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    if (std::fabs(est - p) > 3.0 * se + 1e-12) ok = false;
  }
  const double elapsed = ms_since(t0);
  std::ostringstream detail;
  detail << elapsed / 1000.0 << " s";
  report(3, "closed form vs Monte-Carlo (100 x 1e6 samples)", ok && elapsed < 30000.0,
         detail.str());
}

// ---- criteria 4-6 ----------------------------------------------------------

MetricsReport default_report() {
  ScenarioConfig cfg;  // Table I defaults, strategy auto
  return run_scenario(cfg);
}

void criterion_fig7(const MetricsReport& report_data, double elapsed_ms) {
  const std::size_t points = report_data.rows.size() / 2;
  bool decreasing = true, ordered = true, strict_ok = true;
  for (std::size_t i = 0; i < points; ++i) {
    const ReportRow& conv = report_data.rows[i];
    const ReportRow& prop = report_data.rows[points + i];
    if (i > 0) {
      if (!(conv.sinr_db < report_data.rows[i - 1].sinr_db)) decreasing = false;
      if (!(prop.sinr_db < report_data.rows[points + i - 1].sinr_db)) decreasing = false;
    }
    if (!(prop.sinr_db >= conv.sinr_db)) ordered = false;
    if (prop.active_tier1 != conv.active_tier1 && !(prop.sinr_db > conv.sinr_db)) {
      strict_ok = false;
    }
  }
  std::ostringstream detail;
  detail << elapsed_ms << " ms";
  report(4, "SINR curves: decreasing, proposed >= conventional",
         decreasing && ordered && strict_ok && elapsed_ms < 1000.0, detail.str());
}

void criterion_fig8(const MetricsReport& report_data) {
  bool ok = true;
  const std::size_t points = report_data.rows.size() / 2;
  for (const ReportRow& row : report_data.rows) {
    const double sinr_lin = std::pow(10.0, row.sinr_db / 10.0);
    const double expect = std::log2(1.0 + sinr_lin);
    if (std::fabs(row.capacity_bps_hz - expect) / expect > 1e-12) ok = false;
  }
  for (std::size_t i = 0; i < points; ++i) {
    if (!(report_data.rows[points + i].capacity_bps_hz >= report_data.rows[i].capacity_bps_hz)) {
      ok = false;
    }
  }
  report(5, "capacity curves equal log2(1+SINR), same ordering", ok);
}

void criterion_fig9(const MetricsReport& report_data) {
  const std::size_t points = report_data.rows.size() / 2;
  bool ok = true;
  for (std::size_t i = 0; i < points; ++i) {
    const ReportRow& conv = report_data.rows[i];
    const ReportRow& prop = report_data.rows[points + i];
    if (!(prop.outage_prob <= conv.outage_prob)) ok = false;
    if (i > 0) {
      if (conv.outage_prob < report_data.rows[i - 1].outage_prob - 1e-15) ok = false;
      if (prop.outage_prob < report_data.rows[points + i - 1].outage_prob - 1e-15) ok = false;
    }
  }
  report(6, "outage: proposed <= conventional, non-decreasing in d", ok);
}

// ---- criterion 7 -----------------------------------------------------------

bool pools_invariants_hold(const ChannelManager& mgr) {
  std::multiset<std::tuple<int, int, int, int>> lent, borrowed;
  for (const auto& [cell_id, pool] : mgr.pools()) {
    int free = 0, occupied = 0, blocked = 0, lent_n = 0;
    for (int idx = 0; idx < static_cast<int>(pool.native.size()); ++idx) {
      const ChannelSlot& slot = pool.native[static_cast<std::size_t>(idx)];
      switch (slot.kind) {
        case ChannelSlot::Kind::Free: ++free; break;
        case ChannelSlot::Kind::Occupied: ++occupied; break;
        case ChannelSlot::Kind::Blocked:
          ++blocked;
          if (slot.call_id != 0) return false;  // blocking soundness
          break;
        case ChannelSlot::Kind::Lent:
          ++lent_n;
          lent.insert({cell_id, static_cast<int>(pool.band), idx, slot.borrower});
          break;
      }
    }
    if (free + occupied + blocked + lent_n != static_cast<int>(pool.native.size())) return false;
    if (pool.alloc) {
      const RegionAllocation& a = *pool.alloc;
      if (a.used < 0 || a.used > a.inner_quota ||
          a.inner_quota > static_cast<int>(a.subband.size())) {
        return false;
      }
      int sub_occupied = 0;
      for (int idx : a.subband) {
        if (pool.native[static_cast<std::size_t>(idx)].kind == ChannelSlot::Kind::Occupied) {
          ++sub_occupied;
        }
      }
      if (sub_occupied != a.used) return false;
    }
    for (const auto& [cid, bslot] : pool.borrowed) {
      borrowed.insert({bslot.donor, static_cast<int>(cid.band), cid.index, cell_id});
    }
  }
  return lent == borrowed;
}

int brute_force_max_grants(const ChannelManager& mgr, const Topology& topo, int ref, int needed,
                           Strategy strategy) {
  std::set<ChannelId> available;
  const BandTag ref_band = mgr.pool(ref).band;
  for (int donor : topo.adjacent(ref)) {
    const CellPool& dp = mgr.pool(donor);
    if (dp.band == ref_band) continue;
    for (int idx = 0; idx < topo.channel_count(); ++idx) {
      if (dp.native[static_cast<std::size_t>(idx)].kind != ChannelSlot::Kind::Free) continue;
      const ChannelId cid{dp.band, idx};
      if (mgr.pool(ref).borrowed.count(cid)) continue;
      if (strategy == Strategy::Blocking) {
        bool clean = true;
        for (int c : topo.cochannel_interferers(ref, cid.band).tier1) {
          if (c != donor && mgr.copy_occupied(c, cid)) clean = false;
        }
        if (!clean) continue;
      }
      available.insert(cid);
    }
  }
  return std::min(needed, static_cast<int>(available.size()));
}

void criterion_state_machine() {
  TopologyParams params;
  params.channel_count_per_band = 3;
  const Topology topo = build_topology(params);
  ChannelManager mgr(topo, 0.5);
  std::mt19937_64 rng(303);
  std::vector<std::uint64_t> active;
  std::uint64_t next_id = 1;
  const int n_cells = static_cast<int>(topo.cells().size());
  const Strategy strategies[] = {Strategy::None, Strategy::Blocking, Strategy::Bifurcation,
                                 Strategy::Auto};
  bool ok = true;
  int borrows = 0;
  for (int step = 0; step < 10000 && ok; ++step) {
    const int op = static_cast<int>(rng() % 10);
    if (op < 5 || active.empty()) {
      const int cell = 1 + static_cast<int>(rng() % n_cells);
      Point pos = topo.cell(cell).center;
      pos.x += static_cast<double>(rng() % 1600) - 800.0;
      if (mgr.admit_call(cell, pos, next_id)) active.push_back(next_id);
      ++next_id;
    } else if (op < 9) {
      const std::size_t pick = rng() % active.size();
      mgr.release_call(active[pick]);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
    } else if (mgr.free_native_count(1) == 0) {
      const Strategy strategy = strategies[rng() % 4];
      const int needed = 1 + static_cast<int>(rng() % 3);
      const BorrowPlan plan = mgr.request_borrow(1, needed, strategy);
      if (plan.granted_count() != brute_force_max_grants(mgr, topo, 1, needed, strategy)) {
        ok = false;
      }
      mgr.apply_plan(plan);
      ++borrows;
    }
    if (!pools_invariants_hold(mgr)) ok = false;
  }
  std::ostringstream detail;
  detail << borrows << " borrows";
  report(7, "state machine: 1e4 random events, invariants + planner", ok && borrows > 0,
         detail.str());
}

// ---- criterion 8 -----------------------------------------------------------

void criterion_determinism() {
  ScenarioConfig cfg;
  std::ostringstream a, b;
  emit_csv(run_scenario(cfg), a);
  emit_csv(run_scenario(cfg), b);
  report(8, "byte-identical CSV from identical config and seed", a.str() == b.str());
}

// ---- criterion 9 -----------------------------------------------------------

void criterion_borrow_correctness() {
  TopologyParams params;  // Table I cluster
  const Topology topo = build_topology(params);
  ChannelManager mgr(topo, 0.5);
  for (int i = 0; i < topo.channel_count(); ++i) {
    mgr.admit_call(1, topo.cell(1).center, static_cast<std::uint64_t>(100 + i));
  }
  const BorrowPlan plan = mgr.request_borrow(1, 6, Strategy::Auto);
  bool ok = plan.granted_count() == 6;

  std::map<ChannelId, std::set<int>> neutralized;
  for (const Grant& g : plan.grants) {
    if (g.donor != 2 && g.donor != 3) ok = false;
    for (const ChannelId& cid : g.channels) {
      if (cid.band != BandTag::B && cid.band != BandTag::C) ok = false;
      neutralized[cid] = {};
    }
  }
  for (const Neutralization& n : plan.neutralizations) {
    neutralized[n.channel].insert(n.cell);
  }
  for (const auto& [cid, cells] : neutralized) {
    const std::set<int> want =
        cid.band == BandTag::B ? std::set<int>{4, 6} : std::set<int>{5, 7};
    if (cells != want) ok = false;
  }
  report(9, "borrow grants B'/C' with neutralizations {4,6}/{5,7}", ok);
}

}  // namespace

int main() {
  criterion_hata_spot_value();
  criterion_outage_identity();
  criterion_outage_oracle();

  const auto t0 = Clock::now();
  const MetricsReport report_data = default_report();
  const double scenario_ms = ms_since(t0);
  criterion_fig7(report_data, scenario_ms);
  criterion_fig8(report_data);
  criterion_fig9(report_data);

  criterion_state_machine();
  criterion_determinism();
  criterion_borrow_correctness();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
