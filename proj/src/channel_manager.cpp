#include "cellsim/channel_manager.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellsim {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::Blocking: return "blocking";
    case Strategy::Bifurcation: return "bifurcation";
    case Strategy::Auto: return "auto";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "none") return Strategy::None;
  if (name == "blocking") return Strategy::Blocking;
  if (name == "bifurcation") return Strategy::Bifurcation;
  if (name == "auto") return Strategy::Auto;
  throw std::invalid_argument("unknown strategy: " + name);
}

int BorrowPlan::granted_count() const {
  int n = 0;
  for (const Grant& g : grants) n += static_cast<int>(g.channels.size());
  return n;
}

std::vector<ChannelId> BorrowPlan::granted_channels() const {
  std::vector<ChannelId> out;
  for (const Grant& g : grants) out.insert(out.end(), g.channels.begin(), g.channels.end());
  return out;
}

int InterfererActivity::active_tier1() const {
  return static_cast<int>(std::count_if(tier1.begin(), tier1.end(), [](auto& p) { return p.second; }));
}

int InterfererActivity::active_tier2() const {
  return static_cast<int>(std::count_if(tier2.begin(), tier2.end(), [](auto& p) { return p.second; }));
}

ChannelManager::ChannelManager(const Topology& topo, double inner_fraction)
    : topo_(&topo), inner_fraction_(inner_fraction) {
  if (inner_fraction <= 0.0 || inner_fraction > 1.0) {
    throw std::invalid_argument("inner_fraction must be in (0, 1]");
  }
  for (const Cell& cell : topo.cells()) {
    CellPool pool;
    pool.band = cell.band;
    pool.native.resize(static_cast<std::size_t>(topo.channel_count()));
    pools_.emplace(cell.id, std::move(pool));
  }
}

const CellPool& ChannelManager::pool(int cell_id) const {
  const auto it = pools_.find(cell_id);
  if (it == pools_.end()) throw std::out_of_range("unknown cell id " + std::to_string(cell_id));
  return it->second;
}

CellPool& ChannelManager::pool_mut(int cell_id) {
  const auto it = pools_.find(cell_id);
  if (it == pools_.end()) throw std::out_of_range("unknown cell id " + std::to_string(cell_id));
  return it->second;
}

int ChannelManager::free_native_count(int cell_id) const {
  const CellPool& p = pool(cell_id);
  return static_cast<int>(std::count_if(p.native.begin(), p.native.end(), [](const ChannelSlot& s) {
    return s.kind == ChannelSlot::Kind::Free;
  }));
}

bool ChannelManager::copy_occupied(int cell_id, ChannelId channel) const {
  const CellPool& p = pool(cell_id);
  if (p.band == channel.band) {
    const ChannelSlot& slot = p.native.at(static_cast<std::size_t>(channel.index));
    if (slot.kind == ChannelSlot::Kind::Occupied) return true;
  }
  const auto it = p.borrowed.find(channel);
  return it != p.borrowed.end() && it->second.occupied;
}

bool ChannelManager::channel_in_use(int cell_id, ChannelId channel) const {
  return copy_occupied(cell_id, channel);
}

Region ChannelManager::region_of(int cell_id, const Point& position) const {
  const Cell& cell = topo_->cell(cell_id);
  const double d = distance_m(position, cell.center);
  return d <= inner_fraction_ * cell.radius_m ? Region::Inner : Region::Outer;
}

BorrowPlan ChannelManager::request_borrow(int reference_cell, int needed, Strategy strategy) const {
  pool(reference_cell);
  if (needed < 0) throw std::invalid_argument("needed must be >= 0");
  if (free_native_count(reference_cell) != 0) {
    throw std::invalid_argument("borrowing requires a saturated reference cell");
  }

  BorrowPlan plan;
  plan.reference_cell = reference_cell;
  if (needed == 0) return plan;

  const BandTag ref_band = pool(reference_cell).band;
  std::map<BandTag, std::vector<int>> donors_by_band;  // adjacent donors, ascending id
  for (int id : topo_->adjacent(reference_cell)) {
    const BandTag b = pool(id).band;
    if (b != ref_band) donors_by_band[b].push_back(id);
  }

  std::vector<BandTag> band_order;
  for (const auto& [band, donors] : donors_by_band) band_order.push_back(band);
  std::sort(band_order.begin(), band_order.end(), [&](BandTag a, BandTag b) {
    return donors_by_band[a].front() < donors_by_band[b].front();
  });
  // Start the rotation at the band of the lowest-id donor with free capacity.
  int best_donor = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < band_order.size(); ++i) {
    for (int id : donors_by_band[band_order[i]]) {
      if (free_native_count(id) > 0 && (best_donor == 0 || id < best_donor)) {
        best_donor = id;
        start = i;
      }
    }
  }

  std::set<ChannelId> granted;
  std::map<int, std::vector<ChannelId>> by_donor;

  const auto eligible = [&](int donor, ChannelId cid) {
    const CellPool& dp = pool(donor);
    if (dp.native[static_cast<std::size_t>(cid.index)].kind != ChannelSlot::Kind::Free) return false;
    if (granted.count(cid)) return false;
    if (pool(reference_cell).borrowed.count(cid)) return false;
    if (strategy == Strategy::Blocking) {
      for (int c : topo_->cochannel_interferers(reference_cell, cid.band).tier1) {
        if (c != donor && copy_occupied(c, cid)) return false;
      }
    }
    return true;
  };

  bool progress = true;
  while (static_cast<int>(granted.size()) < needed && progress) {
    progress = false;
    for (std::size_t i = 0; i < band_order.size() && static_cast<int>(granted.size()) < needed; ++i) {
      const BandTag band = band_order[(start + i) % band_order.size()];
      for (int donor : donors_by_band[band]) {
        bool took = false;
        for (int idx = 0; idx < topo_->channel_count(); ++idx) {
          const ChannelId cid{band, idx};
          if (eligible(donor, cid)) {
            granted.insert(cid);
            by_donor[donor].push_back(cid);
            took = progress = true;
            break;
          }
        }
        if (took) break;  // one channel per band per round
      }
    }
  }

  for (const auto& [donor, channels] : by_donor) {
    plan.grants.push_back(Grant{donor, channels});
  }

  if (strategy != Strategy::None) {
    for (const Grant& g : plan.grants) {
      for (const ChannelId& cid : g.channels) {
        for (int c : topo_->cochannel_interferers(reference_cell, cid.band).tier1) {
          if (c == g.donor) continue;
          NeutralizeAction action = NeutralizeAction::Block;
          if (strategy == Strategy::Bifurcation ||
              (strategy == Strategy::Auto && copy_occupied(c, cid))) {
            action = NeutralizeAction::BifurcateInnerOnly;
          }
          plan.neutralizations.push_back(Neutralization{c, cid, action});
        }
      }
    }
  }
  return plan;
}

void ChannelManager::validate_plan(const BorrowPlan& plan) const {
  pool(plan.reference_cell);
  const std::vector<int>& adj = topo_->adjacent(plan.reference_cell);
  std::map<ChannelId, int> donor_of;
  for (const Grant& g : plan.grants) {
    const CellPool& dp = pool(g.donor);
    if (g.donor == plan.reference_cell || std::find(adj.begin(), adj.end(), g.donor) == adj.end()) {
      throw std::runtime_error("plan donor is not adjacent to the reference cell");
    }
    for (const ChannelId& cid : g.channels) {
      if (cid.band != dp.band) throw std::runtime_error("granted channel band does not match donor");
      if (cid.index < 0 || cid.index >= topo_->channel_count()) {
        throw std::runtime_error("granted channel index out of range");
      }
      if (dp.native[static_cast<std::size_t>(cid.index)].kind != ChannelSlot::Kind::Free) {
        throw std::runtime_error("stale plan: granted channel is no longer free at its donor");
      }
      if (!donor_of.emplace(cid, g.donor).second) {
        throw std::runtime_error("duplicate channel in plan grants");
      }
      if (pool(plan.reference_cell).borrowed.count(cid)) {
        throw std::runtime_error("reference cell already borrowed this channel");
      }
    }
  }
  for (const Neutralization& n : plan.neutralizations) {
    const auto it = donor_of.find(n.channel);
    if (it == donor_of.end()) throw std::runtime_error("neutralization for a channel not in grants");
    if (n.cell == it->second) throw std::runtime_error("neutralization targets the donor");
    const auto& tier1 = topo_->cochannel_interferers(plan.reference_cell, n.channel.band).tier1;
    if (std::find(tier1.begin(), tier1.end(), n.cell) == tier1.end()) {
      throw std::runtime_error("neutralization targets a non-tier-1 cell");
    }
    if (n.action == NeutralizeAction::Block && copy_occupied(n.cell, n.channel)) {
      throw std::runtime_error("stale plan: cannot block an occupied channel");
    }
  }
}

void ChannelManager::apply_plan(const BorrowPlan& plan) {
  validate_plan(plan);

  CellPool& ref = pool_mut(plan.reference_cell);
  for (const Grant& g : plan.grants) {
    CellPool& dp = pool_mut(g.donor);
    for (const ChannelId& cid : g.channels) {
      ChannelSlot& slot = dp.native[static_cast<std::size_t>(cid.index)];
      slot = ChannelSlot{ChannelSlot::Kind::Lent, 0, Region::Outer, plan.reference_cell};
      ref.borrowed.emplace(cid, BorrowedSlot{g.donor, false, 0, Region::Outer});
    }
  }

  for (const Neutralization& n : plan.neutralizations) {
    CellPool& cp = pool_mut(n.cell);
    if (n.action == NeutralizeAction::Block) {
      ChannelSlot& slot = cp.native[static_cast<std::size_t>(n.channel.index)];
      if (slot.kind == ChannelSlot::Kind::Free) slot.kind = ChannelSlot::Kind::Blocked;
    } else {
      if (!cp.alloc) cp.alloc.emplace();
      cp.alloc->subband.insert(n.channel.index);
      ref.inner_only.insert(n.channel);
    }
  }
  // Quotas start at the occupied count of the restricted sub-band.
  for (const Neutralization& n : plan.neutralizations) {
    if (n.action != NeutralizeAction::BifurcateInnerOnly) continue;
    CellPool& cp = pool_mut(n.cell);
    int occupied = 0;
    for (int idx : cp.alloc->subband) {
      if (cp.native[static_cast<std::size_t>(idx)].kind == ChannelSlot::Kind::Occupied) ++occupied;
    }
    cp.alloc->used = occupied;
    cp.alloc->inner_quota = std::max(cp.alloc->inner_quota, occupied);
  }
}

void ChannelManager::occupy_native(int cell_id, int index, std::uint64_t call_id, Region region) {
  CellPool& cp = pool_mut(cell_id);
  ChannelSlot& slot = cp.native[static_cast<std::size_t>(index)];
  if (slot.kind != ChannelSlot::Kind::Free) throw std::logic_error("channel not free");
  if (cp.alloc && cp.alloc->subband.count(index)) {
    if (cp.alloc->used >= static_cast<int>(cp.alloc->subband.size())) {
      throw std::logic_error("sub-band quota exhausted");
    }
    if (cp.alloc->used == cp.alloc->inner_quota) ++cp.alloc->inner_quota;
    ++cp.alloc->used;
  }
  slot = ChannelSlot{ChannelSlot::Kind::Occupied, call_id, region, 0};
}

std::optional<ChannelId> ChannelManager::admit_call(int cell_id, const Point& position,
                                                    std::uint64_t call_id) {
  CellPool& cp = pool_mut(cell_id);
  const Cell& cell = topo_->cell(cell_id);
  if (!point_in_hexagon(position, cell.center, cell.radius_m)) {
    throw std::invalid_argument("user position outside the cell");
  }
  if (calls_.count(call_id)) throw std::invalid_argument("duplicate call id");
  const Region region = region_of(cell_id, position);

  for (int idx = 0; idx < static_cast<int>(cp.native.size()); ++idx) {
    if (cp.native[static_cast<std::size_t>(idx)].kind != ChannelSlot::Kind::Free) continue;
    if (cp.alloc && cp.alloc->subband.count(idx)) {
      if (region != Region::Inner) continue;
      if (cp.alloc->used >= static_cast<int>(cp.alloc->subband.size())) continue;
    }
    occupy_native(cell_id, idx, call_id, region);
    const ChannelId cid{cp.band, idx};
    calls_.emplace(call_id, std::make_pair(cell_id, cid));
    return cid;
  }

  for (auto& [cid, slot] : cp.borrowed) {
    if (slot.occupied) continue;
    if (cp.inner_only.count(cid) && region != Region::Inner) continue;
    slot.occupied = true;
    slot.call_id = call_id;
    slot.region = region;
    calls_.emplace(call_id, std::make_pair(cell_id, cid));
    return cid;
  }

  return std::nullopt;
}

void ChannelManager::seize_channel(int cell_id, ChannelId channel, std::uint64_t call_id,
                                   Region region) {
  CellPool& cp = pool_mut(cell_id);
  if (calls_.count(call_id)) throw std::invalid_argument("duplicate call id");
  const auto it = cp.borrowed.find(channel);
  if (it != cp.borrowed.end()) {
    if (it->second.occupied) throw std::logic_error("channel not free");
    it->second.occupied = true;
    it->second.call_id = call_id;
    it->second.region = region;
  } else if (channel.band == cp.band) {
    occupy_native(cell_id, channel.index, call_id, region);
  } else {
    throw std::invalid_argument("channel not present at cell");
  }
  calls_.emplace(call_id, std::make_pair(cell_id, channel));
}

void ChannelManager::release_call(std::uint64_t call_id) {
  const auto it = calls_.find(call_id);
  if (it == calls_.end()) throw std::invalid_argument("unknown call id");
  const auto [cell_id, cid] = it->second;
  CellPool& cp = pool_mut(cell_id);
  const auto bit = cp.borrowed.find(cid);
  if (bit != cp.borrowed.end()) {
    bit->second.occupied = false;
    bit->second.call_id = 0;
    bit->second.region = Region::Outer;
  } else {
    ChannelSlot& slot = cp.native[static_cast<std::size_t>(cid.index)];
    slot = ChannelSlot{};
    if (cp.alloc && cp.alloc->subband.count(cid.index)) --cp.alloc->used;
  }
  calls_.erase(it);
}

InterfererActivity ChannelManager::active_cochannel_interferers(int reference_cell,
                                                                ChannelId channel) const {
  if (!channel_in_use(reference_cell, channel)) {
    throw std::invalid_argument("channel not in use at the reference cell");
  }
  const TierSet& tiers = topo_->cochannel_interferers(reference_cell, channel.band);
  InterfererActivity out;
  for (int id : tiers.tier1) out.tier1.emplace_back(id, copy_occupied(id, channel));
  for (int id : tiers.tier2) out.tier2.emplace_back(id, copy_occupied(id, channel));
  return out;
}

}  // namespace cellsim
