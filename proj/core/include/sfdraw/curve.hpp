#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sfdraw/geometry.hpp"
#include "sfdraw/graph.hpp"

namespace sfdraw {

enum class LinkGeometry { straight, arc, paired_arc };

std::string_view to_string(LinkGeometry kind);
LinkGeometry parse_link_geometry(std::string_view text);

// Drawn shape of one link. Arcs are the minor arc of the circle with the given
// center through `start` and `end`; `midpoint` is the point of the arc halfway
// between them and `sweep` the SVG sweep flag in y-down coordinates.
struct ArcSpec {
  LinkGeometry kind = LinkGeometry::straight;
  Point start;
  Point end;
  Point center;
  double radius = 0.0;
  Point midpoint;
  bool sweep = false;
  double bulge = 0.0;  // distance from the chord midpoint to `midpoint`

  bool operator==(const ArcSpec&) const = default;
};

inline constexpr double kPairedBulgeFraction = 0.15;

ArcSpec straight_link(Point start, Point end);

// Circle centered on the chord's perpendicular bisector at the orthogonal
// projection of `loop_centroid`.
ArcSpec loop_arc(Point start, Point end, Point loop_centroid);

// Arc bulging `fraction` of the chord length to the left of the direction of
// travel in y-down coordinates, so both directions of a reciprocal pair
// mirror each other across the chord.
ArcSpec paired_arc(Point start, Point end, double fraction = kPairedBulgeFraction);

// Orthogonal projection of `p` onto the perpendicular bisector of (a, b).
Point project_onto_bisector(Point a, Point b, Point p);

struct LinkEnds {
  NodeId from = 0;  // node in the curving graph
  NodeId to = 0;
  Point start;  // attachment on the source entity
  Point end;    // attachment on the target entity
};

// Per link: an arc about the shortest directed loop of three or more nodes
// through (from, to); a paired arc when the only loop is the reciprocal edge;
// otherwise a straight segment. Loop centroids use `centers`.
std::vector<ArcSpec> curve_edges(const DirectedGraph& g, std::span<const Point> centers,
                                 std::span<const LinkEnds> links);

}  // namespace sfdraw
