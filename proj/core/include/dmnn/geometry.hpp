#pragma once

#include <vector>

namespace dmnn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Point a;
  Point b;
};

struct LayoutConfig {
  double length_m = 60.0;   // corridor-axis extent
  double width_m = 9.0;
  double office_size_m = 4.0;
  int num_offices = 15;     // K
  int rows = 1;             // 1 or 2 office rows
  int num_sensors = 3;      // L
};

// Indoor floor plan: K equal square offices packed in contiguous rows along
// the length axis, one door per office centred on its corridor-facing wall,
// L sensors on the corridor line. Walls are the interior partition segments
// only; the building perimeter is never crossed by interior paths and is not
// stored. Door openings are kept separate from walls.
struct OfficeLayout {
  double length_m = 0.0;
  double width_m = 0.0;
  double office_size_m = 0.0;
  int rows = 1;
  std::vector<Point> office_centers;    // K entries, office k at index k-1
  std::vector<Point> sensor_positions;  // L entries
  std::vector<Segment> walls;           // partitions, door openings excluded
  std::vector<Segment> doors;           // one opening per office
};

struct ObstacleCount {
  int walls = 0;
  int doors = 0;
};

// Throws GeometryError if the offices cannot be packed into the rectangle
// (row overflow, K not divisible by rows, no corridor room for sensors).
OfficeLayout build_layout(const LayoutConfig& config);

// Number of wall/door segments properly crossed by the open segment
// from-to. Touching a segment endpoint does not count as a crossing.
// Symmetric in its two arguments; both points are assumed inside the
// building rectangle.
ObstacleCount count_obstacles(const OfficeLayout& layout, Point from, Point to);

double distance(Point a, Point b);

}  // namespace dmnn
