#include "dmnn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmnn/errors.hpp"

namespace dmnn {

namespace {

constexpr double kEps = 1e-9;

// Sensors sit this far from the short walls when the nominal uniform grid
// would place them on the building boundary.
double sensor_margin(const LayoutConfig& cfg) { return cfg.office_size_m / 2.0; }

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Proper crossing: the segments intersect at a single interior point of both.
// Endpoint touches and collinear overlaps do not count, which keeps the
// predicate symmetric and deterministic.
bool crosses(Point p, Point q, const Segment& s) {
  const double d1 = cross(p, q, s.a);
  const double d2 = cross(p, q, s.b);
  const double d3 = cross(s.a, s.b, p);
  const double d4 = cross(s.a, s.b, q);
  const bool ab_split = (d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0);
  const bool pq_split = (d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0);
  return ab_split && pq_split;
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

OfficeLayout build_layout(const LayoutConfig& cfg) {
  if (cfg.num_offices < 1 || cfg.num_sensors < 1) {
    throw GeometryError("layout requires at least one office and one sensor");
  }
  if (cfg.office_size_m <= 0.0 || cfg.length_m <= 0.0 || cfg.width_m <= 0.0) {
    throw GeometryError("layout dimensions must be positive");
  }
  if (cfg.rows != 1 && cfg.rows != 2) {
    throw GeometryError("office rows must be 1 or 2, got " +
                        std::to_string(cfg.rows));
  }
  if (cfg.num_offices % cfg.rows != 0) {
    throw GeometryError("num_offices must split into equal rows");
  }

  const double s = cfg.office_size_m;
  const int per_row = cfg.num_offices / cfg.rows;
  if (per_row * s > cfg.length_m + kEps) {
    throw GeometryError("offices do not fit along the length axis: " +
                        std::to_string(per_row) + " x " + std::to_string(s) +
                        " m > " + std::to_string(cfg.length_m) + " m");
  }
  if (cfg.rows * s > cfg.width_m + kEps) {
    throw GeometryError("office rows do not fit across the width");
  }

  // Sensor line: mirrored office-centre depth from the far wall for one row,
  // the inter-row corridor centreline for two rows.
  const double sensor_y =
      cfg.rows == 1 ? cfg.width_m - s / 2.0 : cfg.width_m / 2.0;
  if (cfg.rows == 1 && sensor_y <= s + kEps) {
    throw GeometryError("no corridor room left for sensors");
  }
  if (cfg.rows == 2 && (sensor_y <= s + kEps || sensor_y >= cfg.width_m - s - kEps)) {
    throw GeometryError("no corridor room between office rows");
  }

  OfficeLayout layout;
  layout.length_m = cfg.length_m;
  layout.width_m = cfg.width_m;
  layout.office_size_m = s;
  layout.rows = cfg.rows;

  const double door_w = std::min(1.0, s / 2.0);

  // Offices are packed from x = 0, row 0 against y = 0, row 1 against the
  // far wall. Office ids are row-major.
  for (int row = 0; row < cfg.rows; ++row) {
    const double y_lo = row == 0 ? 0.0 : cfg.width_m - s;
    const double y_hi = y_lo + s;
    const double door_y = row == 0 ? y_hi : y_lo;  // corridor-facing wall

    for (int i = 0; i < per_row; ++i) {
      const double x_lo = i * s;
      const double cx = x_lo + s / 2.0;
      layout.office_centers.push_back({cx, (y_lo + y_hi) / 2.0});

      // Corridor-facing wall split around the door opening.
      layout.walls.push_back({{x_lo, door_y}, {cx - door_w / 2.0, door_y}});
      layout.doors.push_back({{cx - door_w / 2.0, door_y}, {cx + door_w / 2.0, door_y}});
      layout.walls.push_back({{cx + door_w / 2.0, door_y}, {x_lo + s, door_y}});

      // Partition shared with the next office, stored once.
      if (i + 1 < per_row) {
        layout.walls.push_back({{x_lo + s, y_lo}, {x_lo + s, y_hi}});
      }
    }

    // End wall of the row block when it stops short of the building wall.
    const double block_end = per_row * s;
    if (block_end < cfg.length_m - kEps) {
      layout.walls.push_back({{block_end, y_lo}, {block_end, y_hi}});
    }
  }

  // Sensors on a uniform grid spanning the full length, pulled inside the
  // building by the margin where the grid touches the short walls.
  const double margin = sensor_margin(cfg);
  for (int i = 0; i < cfg.num_sensors; ++i) {
    double x = cfg.num_sensors == 1
                   ? cfg.length_m / 2.0
                   : cfg.length_m * i / (cfg.num_sensors - 1);
    x = std::clamp(x, margin, cfg.length_m - margin);
    layout.sensor_positions.push_back({x, sensor_y});
  }

  return layout;
}

ObstacleCount count_obstacles(const OfficeLayout& layout, Point from, Point to) {
  ObstacleCount count;
  for (const Segment& wall : layout.walls) {
    if (crosses(from, to, wall)) ++count.walls;
  }
  for (const Segment& door : layout.doors) {
    if (crosses(from, to, door)) ++count.doors;
  }
  return count;
}

}  // namespace dmnn
