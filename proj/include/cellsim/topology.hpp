#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cellsim/geometry.hpp"

namespace cellsim {

enum class BandTag { A, B, C };

char band_name(BandTag tag);

struct TopologyParams {
  double cell_radius_m = 1000.0;
  double bs_height_m = 100.0;
  double tx_power_w = 1500.0;
  int channel_count_per_band = 10;
  int grid_extent = 4;  // hex rings around the reference cell
};

struct Cell {
  int id = 0;
  HexCoord coord;
  Point center;
  double radius_m = 0.0;
  BandTag band = BandTag::A;
  double bs_height_m = 0.0;
  double tx_power_w = 0.0;
};

// Co-channel cells of one band around one cell, split by center-distance ring.
struct TierSet {
  std::vector<int> tier1;
  std::vector<int> tier2;
};

// Hexagonal reuse-3 cluster: reference cell 1 at the origin, cells 2-7 around
// it (bands B,C,B,C,B,C clockwise from cell 2), plus enough surrounding cells
// that tier-1 and tier-2 co-channel sets exist for every band.
//
// Immutable after construction; safe to share across threads read-only.
class Topology {
 public:
  static constexpr int kReferenceCell = 1;

  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int id) const;  // throws std::out_of_range on unknown id
  int channel_count() const { return channel_count_; }
  double cell_radius_m() const { return radius_m_; }

  // Tier-1/tier-2 co-channel cells of `band` as seen from `cell_id`,
  // ascending id within each tier.
  const TierSet& cochannel_interferers(int cell_id, BandTag band) const;

  // Hex-adjacent cell ids, ascending.
  const std::vector<int>& adjacent(int cell_id) const;

  friend Topology build_topology(const TopologyParams& params);

 private:
  std::vector<Cell> cells_;
  int channel_count_ = 0;
  double radius_m_ = 0.0;
  std::map<std::pair<int, int>, TierSet> tiers_;
  std::map<int, std::vector<int>> adjacency_;
};

Topology build_topology(const TopologyParams& params);

}  // namespace cellsim
