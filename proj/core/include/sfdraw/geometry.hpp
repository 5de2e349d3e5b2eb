#pragma once

#include <cmath>
#include <string_view>

namespace sfdraw {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

// Axis-aligned box stored as center plus half extents.
struct Rect {
  Point center;
  double half_width = 0.0;
  double half_height = 0.0;

  double left() const { return center.x - half_width; }
  double right() const { return center.x + half_width; }
  double top() const { return center.y - half_height; }
  double bottom() const { return center.y + half_height; }
  double width() const { return 2.0 * half_width; }
  double height() const { return 2.0 * half_height; }

  static Rect from_bounds(double left, double top, double right, double bottom) {
    return {{(left + right) / 2.0, (top + bottom) / 2.0}, (right - left) / 2.0, (bottom - top) / 2.0};
  }

  bool operator==(const Rect&) const = default;
};

// Smallest box containing both.
Rect unite(const Rect& a, const Rect& b);

// Positive-area intersection. Boxes that only share an edge do not overlap.
bool overlaps(const Rect& a, const Rect& b);
double intersection_area(const Rect& a, const Rect& b);

// Point where the ray from the box center towards `toward` leaves the box.
Point boundary_point(const Rect& box, Point toward);

// True when `p` lies on the boundary of `box` within `tolerance`.
bool on_boundary(const Rect& box, Point p, double tolerance = 1e-7);

// Symbol and label sizes shared by chain layout, node sizing, and rendering.
struct Geometry {
  double stock_width = 45.0;
  double stock_height = 35.0;
  double chain_column_width = 120.0;  // horizontal offset between chain columns
  double vertical_spacing = 25.0;
  double margin = 15.0;
  double unit_length = 180.0;  // ideal edge length for the stress layout
  double aux_radius = 9.0;
  double valve_radius = 7.0;
  double cloud_width = 24.0;
  double cloud_height = 16.0;
  double module_width = 110.0;
  double module_height = 50.0;
  double char_width = 5.5;
  double label_height = 12.0;
  double font_size = 10.0;

  double label_width(std::string_view text) const {
    return char_width * static_cast<double>(text.size());
  }
};

// Box reserved for a name drawn centered under a symbol.
Rect label_box(const Rect& symbol, std::string_view text, const Geometry& geometry);

}  // namespace sfdraw
