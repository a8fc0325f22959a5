#include "cellsim/geometry.hpp"

#include <cstdlib>

namespace cellsim {

int hex_distance(const HexCoord& a, const HexCoord& b) {
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  const int ds = -dq - dr;
  return (std::abs(dq) + std::abs(dr) + std::abs(ds)) / 2;
}

Point hex_center(const HexCoord& c, double radius_m) {
  const double sqrt3 = std::sqrt(3.0);
  return Point{radius_m * 1.5 * c.q, radius_m * sqrt3 * (c.r + c.q / 2.0)};
}

bool point_in_hexagon(const Point& p, const Point& center, double radius_m) {
  const double sqrt3 = std::sqrt(3.0);
  const double px = std::fabs(p.x - center.x);
  const double py = std::fabs(p.y - center.y);
  if (py > sqrt3 * radius_m / 2.0) return false;
  return sqrt3 * px + py <= sqrt3 * radius_m + 1e-9;
}

}  // namespace cellsim
