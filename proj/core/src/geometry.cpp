#include "sfdraw/geometry.hpp"

#include <algorithm>
#include <limits>

namespace sfdraw {

Rect unite(const Rect& a, const Rect& b) {
  return Rect::from_bounds(std::min(a.left(), b.left()), std::min(a.top(), b.top()), std::max(a.right(), b.right()),
                           std::max(a.bottom(), b.bottom()));
}

double intersection_area(const Rect& a, const Rect& b) {
  double w = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  double h = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

bool overlaps(const Rect& a, const Rect& b) { return intersection_area(a, b) > 0.0; }

Point boundary_point(const Rect& box, Point toward) {
  Point d = toward - box.center;
  if (d.x == 0.0 && d.y == 0.0) d = {1.0, 0.0};
  double sx = d.x != 0.0 ? box.half_width / std::abs(d.x) : std::numeric_limits<double>::infinity();
  double sy = d.y != 0.0 ? box.half_height / std::abs(d.y) : std::numeric_limits<double>::infinity();
  if (sx <= sy) {
    // Leaves through a vertical side; pin x exactly to it.
    return {d.x > 0.0 ? box.right() : box.left(), box.center.y + d.y * sx};
  }
  return {box.center.x + d.x * sy, d.y > 0.0 ? box.bottom() : box.top()};
}

bool on_boundary(const Rect& box, Point p, double tolerance) {
  bool within_x = p.x >= box.left() - tolerance && p.x <= box.right() + tolerance;
  bool within_y = p.y >= box.top() - tolerance && p.y <= box.bottom() + tolerance;
  if (!within_x || !within_y) return false;
  bool on_vertical = std::abs(p.x - box.left()) <= tolerance || std::abs(p.x - box.right()) <= tolerance;
  bool on_horizontal = std::abs(p.y - box.top()) <= tolerance || std::abs(p.y - box.bottom()) <= tolerance;
  return on_vertical || on_horizontal;
}

Rect label_box(const Rect& symbol, std::string_view text, const Geometry& geometry) {
  double half_height = geometry.label_height / 2.0;
  return {{symbol.center.x, symbol.bottom() + 2.0 + half_height}, geometry.label_width(text) / 2.0, half_height};
}

}  // namespace sfdraw
