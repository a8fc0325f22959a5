#include "cellsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellsim {

char band_name(BandTag tag) {
  switch (tag) {
    case BandTag::A: return 'A';
    case BandTag::B: return 'B';
    case BandTag::C: return 'C';
  }
  return '?';
}

namespace {

// Lattice 3-coloring: adjacent hexes always differ. Color 0 is band A at the
// origin; the ring around it alternates colors 2 and 1, which become B and C.
BandTag band_of(const HexCoord& c) {
  const int color = ((2 * c.q + c.r) % 3 + 3) % 3;
  switch (color) {
    case 0: return BandTag::A;
    case 2: return BandTag::B;
    default: return BandTag::C;
  }
}

// Cells 2..7 clockwise starting at cell 2 (bands B,C,B,C,B,C).
constexpr HexCoord kRing1[6] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

}  // namespace

const Cell& Topology::cell(int id) const {
  if (id < 1 || id > static_cast<int>(cells_.size())) {
    throw std::out_of_range("unknown cell id " + std::to_string(id));
  }
  return cells_[static_cast<std::size_t>(id - 1)];
}

const TierSet& Topology::cochannel_interferers(int cell_id, BandTag band) const {
  cell(cell_id);  // id check
  const auto it = tiers_.find({cell_id, static_cast<int>(band)});
  if (it == tiers_.end()) {
    throw std::out_of_range("no tier index for cell " + std::to_string(cell_id));
  }
  return it->second;
}

const std::vector<int>& Topology::adjacent(int cell_id) const {
  const auto it = adjacency_.find(cell_id);
  if (it == adjacency_.end()) {
    throw std::out_of_range("unknown cell id " + std::to_string(cell_id));
  }
  return it->second;
}

Topology build_topology(const TopologyParams& params) {
  if (params.cell_radius_m <= 0.0) throw std::invalid_argument("cell_radius_m must be positive");
  if (params.bs_height_m <= 0.0) throw std::invalid_argument("bs_height_m must be positive");
  if (params.tx_power_w <= 0.0) throw std::invalid_argument("tx_power_w must be positive");
  if (params.channel_count_per_band < 1) throw std::invalid_argument("channel_count_per_band must be >= 1");
  if (params.grid_extent < 3) throw std::invalid_argument("grid_extent must be >= 3");

  Topology topo;
  topo.channel_count_ = params.channel_count_per_band;
  topo.radius_m_ = params.cell_radius_m;

  std::vector<HexCoord> coords;
  coords.push_back({0, 0});
  coords.insert(coords.end(), std::begin(kRing1), std::end(kRing1));
  // Outer rings in a fixed (q, r) order so ids are deterministic.
  std::vector<HexCoord> outer;
  for (int q = -params.grid_extent; q <= params.grid_extent; ++q) {
    for (int r = -params.grid_extent; r <= params.grid_extent; ++r) {
      const HexCoord c{q, r};
      if (hex_distance(c, {0, 0}) >= 2 && hex_distance(c, {0, 0}) <= params.grid_extent) {
        outer.push_back(c);
      }
    }
  }
  std::sort(outer.begin(), outer.end(), [](const HexCoord& a, const HexCoord& b) {
    const int da = hex_distance(a, {0, 0});
    const int db = hex_distance(b, {0, 0});
    return std::tie(da, a.q, a.r) < std::tie(db, b.q, b.r);
  });
  coords.insert(coords.end(), outer.begin(), outer.end());

  int next_id = 1;
  for (const HexCoord& c : coords) {
    Cell cell;
    cell.id = next_id++;
    cell.coord = c;
    cell.center = hex_center(c, params.cell_radius_m);
    cell.radius_m = params.cell_radius_m;
    cell.band = band_of(c);
    cell.bs_height_m = params.bs_height_m;
    cell.tx_power_w = params.tx_power_w;
    topo.cells_.push_back(cell);
  }

  for (const Cell& a : topo.cells_) {
    std::vector<int> adj;
    for (const Cell& b : topo.cells_) {
      if (b.id != a.id && hex_distance(a.coord, b.coord) == 1) adj.push_back(b.id);
    }
    topo.adjacency_[a.id] = std::move(adj);
  }

  // Tier index: group co-channel cells by center distance; tier 1 is the
  // nearest ring, tier 2 the next distinct ring.
  for (const Cell& a : topo.cells_) {
    for (BandTag band : {BandTag::A, BandTag::B, BandTag::C}) {
      std::vector<std::pair<double, int>> same;
      for (const Cell& b : topo.cells_) {
        if (b.id != a.id && b.band == band) {
          same.emplace_back(distance_m(a.center, b.center), b.id);
        }
      }
      std::sort(same.begin(), same.end());
      TierSet tiers;
      if (!same.empty()) {
        const double rel = 1e-6 * params.cell_radius_m;
        const double d1 = same.front().first;
        double d2 = -1.0;
        for (const auto& [d, id] : same) {
          if (d <= d1 + rel) {
            tiers.tier1.push_back(id);
          } else {
            if (d2 < 0.0) d2 = d;
            if (d <= d2 + rel) tiers.tier2.push_back(id);
          }
        }
        std::sort(tiers.tier1.begin(), tiers.tier1.end());
        std::sort(tiers.tier2.begin(), tiers.tier2.end());
      }
      topo.tiers_[{a.id, static_cast<int>(band)}] = std::move(tiers);
    }
  }

  return topo;
}

}  // namespace cellsim
