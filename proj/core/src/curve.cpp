#include "sfdraw/curve.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace sfdraw {

std::string_view to_string(LinkGeometry kind) {
  switch (kind) {
    case LinkGeometry::straight: return "straight";
    case LinkGeometry::arc: return "arc";
    case LinkGeometry::paired_arc: return "paired_arc";
  }
  return "straight";
}

LinkGeometry parse_link_geometry(std::string_view text) {
  if (text == "straight") return LinkGeometry::straight;
  if (text == "arc") return LinkGeometry::arc;
  if (text == "paired_arc") return LinkGeometry::paired_arc;
  throw std::invalid_argument("unknown link geometry " + std::string(text));
}

ArcSpec straight_link(Point start, Point end) {
  ArcSpec spec;
  spec.start = start;
  spec.end = end;
  spec.midpoint = midpoint(start, end);
  return spec;
}

Point project_onto_bisector(Point a, Point b, Point p) {
  Point mid = midpoint(a, b);
  Point chord = b - a;
  double len2 = dot(chord, chord);
  if (len2 == 0.0) return p;
  return p - chord * (dot(p - mid, chord) / len2);
}

namespace {

Point left_normal(Point start, Point end) {
  Point d = end - start;
  double len = norm(d);
  if (len == 0.0) return {0.0, -1.0};
  // Left of travel on screen, where y grows downwards.
  return {d.y / len, -d.x / len};
}

// Fills radius, midpoint, and sweep from start, end, and center.
ArcSpec finish_arc(ArcSpec spec, Point fallback_side) {
  spec.radius = distance(spec.center, spec.start);
  Point mid = midpoint(spec.start, spec.end);
  Point out = mid - spec.center;
  double len = norm(out);
  Point dir = len > 0.0 ? out * (1.0 / len) : fallback_side;
  spec.midpoint = spec.center + dir * spec.radius;
  spec.bulge = distance(spec.midpoint, mid);
  spec.sweep = cross(spec.midpoint - spec.start, spec.end - spec.midpoint) > 0.0;
  return spec;
}

}  // namespace

ArcSpec loop_arc(Point start, Point end, Point loop_centroid) {
  ArcSpec spec;
  spec.kind = LinkGeometry::arc;
  spec.start = start;
  spec.end = end;
  spec.center = project_onto_bisector(start, end, loop_centroid);
  if (start == end) return finish_arc(spec, left_normal(start, end));
  // A centroid on the chord leaves a semicircle; bulge away from the loop.
  Point side = left_normal(start, end);
  if (dot(loop_centroid - midpoint(start, end), side) > 0.0) side = side * -1.0;
  return finish_arc(spec, side);
}

ArcSpec paired_arc(Point start, Point end, double fraction) {
  ArcSpec spec;
  spec.kind = LinkGeometry::paired_arc;
  spec.start = start;
  spec.end = end;
  const double chord = distance(start, end);
  const Point mid = midpoint(start, end);
  const Point n = left_normal(start, end);
  const double s = fraction * chord;
  const double h = chord / 2.0;
  if (s <= 0.0) return straight_link(start, end);
  const double r = (h * h + s * s) / (2.0 * s);
  spec.center = mid + n * (s - r);
  spec.radius = r;
  spec.midpoint = mid + n * s;
  spec.bulge = s;
  spec.sweep = cross(spec.midpoint - start, end - spec.midpoint) > 0.0;
  return spec;
}

std::vector<ArcSpec> curve_edges(const DirectedGraph& g, std::span<const Point> centers,
                                 std::span<const LinkEnds> links) {
  std::map<Edge, std::optional<FeedbackLoop>> loops;
  std::vector<ArcSpec> out;
  out.reserve(links.size());
  for (const auto& link : links) {
    if (link.from == link.to || !g.has_edge(link.from, link.to)) {
      out.push_back(straight_link(link.start, link.end));
      continue;
    }
    auto key = Edge{link.from, link.to};
    auto it = loops.find(key);
    if (it == loops.end()) it = loops.emplace(key, shortest_feedback_loop_through(g, link.from, link.to)).first;
    if (it->second) {
      Point centroid;
      for (NodeId v : it->second->nodes) centroid = centroid + centers[v];
      centroid = centroid * (1.0 / static_cast<double>(it->second->nodes.size()));
      out.push_back(loop_arc(link.start, link.end, centroid));
    } else if (g.has_edge(link.to, link.from)) {
      out.push_back(paired_arc(link.start, link.end));
    } else {
      out.push_back(straight_link(link.start, link.end));
    }
  }
  return out;
}

}  // namespace sfdraw
