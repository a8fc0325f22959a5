#pragma once

#include <cmath>

namespace cellsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_m(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Axial coordinates on a flat-topped hexagonal grid.
struct HexCoord {
  int q = 0;
  int r = 0;
  friend bool operator==(const HexCoord&, const HexCoord&) = default;
  friend auto operator<=>(const HexCoord&, const HexCoord&) = default;
};

int hex_distance(const HexCoord& a, const HexCoord& b);

// Center of the hexagon at c; radius_m is the center-to-vertex distance.
Point hex_center(const HexCoord& c, double radius_m);

// Membership test for a flat-topped regular hexagon centered at `center`.
bool point_in_hexagon(const Point& p, const Point& center, double radius_m);

}  // namespace cellsim
