#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cellsim/geometry.hpp"
#include "cellsim/topology.hpp"

namespace cellsim {

// Interference declination applied to co-channel copies of borrowed channels.
//   None        — conventional baseline, no declination
//   Blocking    — block free copies, skip channels with occupied copies
//   Bifurcation — restrict copies to inner-region users
//   Auto        — block free copies, bifurcate occupied ones
enum class Strategy { None, Blocking, Bifurcation, Auto };

const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

enum class Region { Inner, Outer };
enum class NeutralizeAction { Block, BifurcateInnerOnly };

struct ChannelId {
  BandTag band = BandTag::A;
  int index = 0;
  friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

struct ChannelSlot {
  enum class Kind { Free, Occupied, Blocked, Lent };
  Kind kind = Kind::Free;
  std::uint64_t call_id = 0;  // Occupied only
  Region region = Region::Outer;
  int borrower = 0;  // Lent only
  friend bool operator==(const ChannelSlot&, const ChannelSlot&) = default;
};

struct BorrowedSlot {
  int donor = 0;
  bool occupied = false;
  std::uint64_t call_id = 0;
  Region region = Region::Outer;
  friend bool operator==(const BorrowedSlot&, const BorrowedSlot&) = default;
};

// Inner-user quota over the restricted sub-band of a bifurcated cell.
// Invariant: 0 <= used <= inner_quota <= subband.size().
struct RegionAllocation {
  std::set<int> subband;  // native channel indices under restriction
  int inner_quota = 0;
  int used = 0;
  friend bool operator==(const RegionAllocation&, const RegionAllocation&) = default;
};

struct Grant {
  int donor = 0;
  std::vector<ChannelId> channels;
};

struct Neutralization {
  int cell = 0;
  ChannelId channel;
  NeutralizeAction action = NeutralizeAction::Block;
};

struct BorrowPlan {
  int reference_cell = 0;
  std::vector<Grant> grants;
  std::vector<Neutralization> neutralizations;
  int granted_count() const;
  std::vector<ChannelId> granted_channels() const;  // grant order
};

struct CellPool {
  BandTag band = BandTag::A;
  std::vector<ChannelSlot> native;
  std::map<ChannelId, BorrowedSlot> borrowed;
  std::optional<RegionAllocation> alloc;
  std::set<ChannelId> inner_only;  // borrowed channels restricted to inner users
  friend bool operator==(const CellPool&, const CellPool&) = default;
};

struct InterfererActivity {
  std::vector<std::pair<int, bool>> tier1;
  std::vector<std::pair<int, bool>> tier2;
  int active_tier1() const;
  int active_tier2() const;
};

// Per-cell channel pools plus the borrowing / declination state machine.
// Single-writer: one event sequence mutates a manager at a time.
class ChannelManager {
 public:
  ChannelManager(const Topology& topo, double inner_fraction);

  // Plans a borrow of `needed` channels for a saturated reference cell.
  // Channels come from the lowest-id adjacent donor of each non-native band,
  // round-robin across bands; partial grants are allowed.
  BorrowPlan request_borrow(int reference_cell, int needed, Strategy strategy) const;

  // Applies a plan atomically; throws std::runtime_error on a stale plan and
  // leaves the state untouched.
  void apply_plan(const BorrowPlan& plan);

  // Lowest-index eligible channel, or nullopt when the call must be blocked.
  std::optional<ChannelId> admit_call(int cell_id, const Point& position, std::uint64_t call_id);

  void release_call(std::uint64_t call_id);

  // Per tier-1/tier-2 co-channel cell: does it currently transmit on `channel`?
  InterfererActivity active_cochannel_interferers(int reference_cell, ChannelId channel) const;

  // Occupies one specific free channel (probe placement in the sweep runner).
  void seize_channel(int cell_id, ChannelId channel, std::uint64_t call_id, Region region);

  int free_native_count(int cell_id) const;
  bool copy_occupied(int cell_id, ChannelId channel) const;
  bool channel_in_use(int cell_id, ChannelId channel) const;
  Region region_of(int cell_id, const Point& position) const;
  const CellPool& pool(int cell_id) const;
  const std::map<int, CellPool>& pools() const { return pools_; }
  const Topology& topology() const { return *topo_; }
  double inner_fraction() const { return inner_fraction_; }
  bool has_call(std::uint64_t call_id) const { return calls_.count(call_id) != 0; }

  friend bool operator==(const ChannelManager& a, const ChannelManager& b) {
    return a.pools_ == b.pools_ && a.calls_ == b.calls_;
  }

 private:
  CellPool& pool_mut(int cell_id);
  void validate_plan(const BorrowPlan& plan) const;
  void occupy_native(int cell_id, int index, std::uint64_t call_id, Region region);

  const Topology* topo_;
  double inner_fraction_;
  std::map<int, CellPool> pools_;
  std::map<std::uint64_t, std::pair<int, ChannelId>> calls_;
};

}  // namespace cellsim
