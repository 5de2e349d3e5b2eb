#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sfdraw/overlap.hpp"

namespace sfdraw {

std::size_t count_overlaps(std::span<const SizedNode> nodes) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (overlaps(nodes[i].box(), nodes[j].box())) ++count;
  return count;
}

double total_displacement(std::span<const SizedNode> before, std::span<const SizedNode> after) {
  double total = 0.0;
  const std::size_t n = std::min(before.size(), after.size());
  for (std::size_t i = 0; i < n; ++i) total += distance(before[i].center, after[i].center);
  return total;
}

namespace {

// Orders a pair along one axis; ties go to the lower index so the constraint
// graph stays acyclic.
std::pair<std::size_t, std::size_t> ordered(std::size_t i, std::size_t j, double ci, double cj) {
  if (ci < cj || (ci == cj && i < j)) return {i, j};
  return {j, i};
}

double x_overlap(const SizedNode& a, const SizedNode& b) {
  return a.half_width + b.half_width - std::abs(a.center.x - b.center.x);
}

double y_overlap(const SizedNode& a, const SizedNode& b) {
  return a.half_height + b.half_height - std::abs(a.center.y - b.center.y);
}

}  // namespace

std::vector<SizedNode> remove_overlaps_vpsc(std::vector<SizedNode> nodes) {
  const std::size_t n = nodes.size();
  if (n < 2) return nodes;

  std::vector<SeparationConstraint> cx;
  std::vector<double> desired(n);
  for (std::size_t i = 0; i < n; ++i) {
    desired[i] = nodes[i].center.x;
    for (std::size_t j = i + 1; j < n; ++j) {
      double ox = x_overlap(nodes[i], nodes[j]);
      double oy = y_overlap(nodes[i], nodes[j]);
      if (ox <= 0.0 || oy <= 0.0 || ox > oy) continue;
      auto [l, r] = ordered(i, j, nodes[i].center.x, nodes[j].center.x);
      cx.push_back({l, r, nodes[l].half_width + nodes[r].half_width + kSeparationSlack});
    }
  }
  if (!cx.empty()) {
    auto xs = solve_separation(desired, cx);
    for (std::size_t i = 0; i < n; ++i) nodes[i].center.x = xs[i];
  }

  std::vector<SeparationConstraint> cy;
  for (std::size_t i = 0; i < n; ++i) {
    desired[i] = nodes[i].center.y;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x_overlap(nodes[i], nodes[j]) <= 0.0) continue;
      auto [l, r] = ordered(i, j, nodes[i].center.y, nodes[j].center.y);
      cy.push_back({l, r, nodes[l].half_height + nodes[r].half_height + kSeparationSlack});
    }
  }
  if (!cy.empty()) {
    auto ys = solve_separation(desired, cy);
    for (std::size_t i = 0; i < n; ++i) nodes[i].center.y = ys[i];
  }
  return nodes;
}

namespace {

// Keeps the part of `polygon` where dot(p, normal) <= limit.
std::vector<Point> clip(const std::vector<Point>& polygon, Point normal, double limit) {
  std::vector<Point> out;
  const std::size_t k = polygon.size();
  for (std::size_t i = 0; i < k; ++i) {
    Point a = polygon[i];
    Point b = polygon[(i + 1) % k];
    double da = dot(a, normal) - limit;
    double db = dot(b, normal) - limit;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

Rect default_bounds(std::span<const SizedNode> nodes) {
  Rect box = nodes.front().box();
  double extent = 0.0;
  for (const auto& node : nodes) {
    box = unite(box, node.box());
    extent = std::max({extent, node.half_width * 2.0, node.half_height * 2.0});
  }
  box.half_width += extent;
  box.half_height += extent;
  return box;
}

// Separates coincident sites along a golden-angle spiral so every cell is
// nondegenerate.
void separate_coincident(std::vector<Point>& sites, double scale) {
  constexpr double kGolden = 2.399963229728653;
  for (std::size_t i = 1; i < sites.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (sites[i] == sites[j]) {
        double angle = kGolden * static_cast<double>(i);
        double r = scale * static_cast<double>(i);
        sites[i] = sites[i] + Point{r * std::cos(angle), r * std::sin(angle)};
        j = std::numeric_limits<std::size_t>::max();  // restart the scan for i
      }
    }
  }
}

Point clamp_into(Point p, const Rect& bounds) {
  return {std::clamp(p.x, bounds.left(), bounds.right()), std::clamp(p.y, bounds.top(), bounds.bottom())};
}

}  // namespace

std::vector<std::vector<Point>> voronoi_cells(std::span<const Point> sites, const Rect& bounds) {
  const std::vector<Point> frame{{bounds.left(), bounds.top()},
                                 {bounds.right(), bounds.top()},
                                 {bounds.right(), bounds.bottom()},
                                 {bounds.left(), bounds.bottom()}};
  std::vector<std::vector<Point>> cells(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::vector<Point> cell = frame;
    for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
      if (j == i || sites[j] == sites[i]) continue;
      Point normal = sites[j] - sites[i];
      double limit = (dot(sites[j], sites[j]) - dot(sites[i], sites[i])) / 2.0;
      cell = clip(cell, normal, limit);
    }
    cells[i] = std::move(cell);
  }
  return cells;
}

Point polygon_centroid(std::span<const Point> polygon) {
  if (polygon.empty()) return {};
  double area = 0.0;
  Point acc;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    Point a = polygon[i];
    Point b = polygon[(i + 1) % polygon.size()];
    double c = cross(a, b);
    area += c;
    acc = acc + (a + b) * c;
  }
  if (std::abs(area) < 1e-12) {
    Point mean;
    for (Point p : polygon) mean = mean + p;
    return mean * (1.0 / static_cast<double>(polygon.size()));
  }
  return acc * (1.0 / (3.0 * area));
}

VoronoiResult remove_overlaps_voronoi(std::vector<SizedNode> nodes, std::optional<Rect> bounds,
                                      const VoronoiOptions& options) {
  VoronoiResult result;
  if (nodes.empty()) {
    result.bounds = bounds.value_or(Rect{});
    return result;
  }
  Rect frame = bounds.value_or(default_bounds(nodes));
  result.bounds = frame;
  if (count_overlaps(nodes) == 0) {
    result.nodes = std::move(nodes);
    return result;
  }

  std::vector<Point> sites(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) sites[i] = clamp_into(nodes[i].center, frame);

  auto apply = [&] {
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].center = sites[i];
  };

  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    const double scale = std::max(frame.width(), frame.height());
    for (std::size_t it = 0; it < options.iterations_per_round; ++it) {
      separate_coincident(sites, 1e-6 * scale);
      auto cells = voronoi_cells(sites, frame);
      double moved = 0.0;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        Point next = cells[i].empty() ? sites[i] : polygon_centroid(cells[i]);
        moved = std::max(moved, distance(next, sites[i]));
        sites[i] = next;
      }
      ++result.iterations;
      apply();
      if (count_overlaps(nodes) == 0) {
        result.nodes = std::move(nodes);
        result.bounds = frame;
        return result;
      }
      if (moved < 1e-4 * scale) break;
    }
    frame.half_width *= options.expansion;
    frame.half_height *= options.expansion;
    ++result.expansions;
    // Scale sites with the frame so the spread grows immediately.
    for (auto& s : sites) s = frame.center + (s - frame.center) * options.expansion;
  }
  result.nodes = std::move(nodes);
  result.bounds = frame;
  return result;
}

}  // namespace sfdraw
