#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfdraw/geometry.hpp"

namespace sfdraw {

struct SizedNode {
  Point center;
  double half_width = 0.0;
  double half_height = 0.0;

  Rect box() const { return {center, half_width, half_height}; }
};

std::size_t count_overlaps(std::span<const SizedNode> nodes);
double total_displacement(std::span<const SizedNode> before, std::span<const SizedNode> after);

// x[right] - x[left] >= gap.
struct SeparationConstraint {
  std::size_t left = 0;
  std::size_t right = 0;
  double gap = 0.0;
};

// Minimizes sum (x_i - desired_i)^2 subject to separation constraints whose
// left-to-right relation is acyclic. Block-merging active-set method: blocks of
// variables held rigid by active constraints are merged while a constraint is
// violated and split while an active constraint has a negative Lagrange
// multiplier.
std::vector<double> solve_separation(std::span<const double> desired, std::span<const SeparationConstraint> constraints);

// Added to every vertical separation so that rounding cannot leave a sliver of
// positive-area overlap.
inline constexpr double kSeparationSlack = 1e-7;

// Horizontal pass over overlapping pairs that are cheaper to separate
// sideways, then a vertical pass over every pair still overlapping in x.
std::vector<SizedNode> remove_overlaps_vpsc(std::vector<SizedNode> nodes);

struct VoronoiOptions {
  std::size_t iterations_per_round = 200;
  double expansion = 1.2;
  std::size_t max_rounds = 100;
};

struct VoronoiResult {
  std::vector<SizedNode> nodes;
  std::size_t iterations = 0;
  std::size_t expansions = 0;
  Rect bounds;
};

// Cells of a bounded Voronoi diagram, one convex polygon per site.
std::vector<std::vector<Point>> voronoi_cells(std::span<const Point> sites, const Rect& bounds);
Point polygon_centroid(std::span<const Point> polygon);

// Lloyd iterations inside `bounds` (default: box around all nodes grown by the
// largest node extent) until nothing overlaps. After each round of
// `iterations_per_round`, or earlier once the nodes stop moving, the bounds
// grow by `expansion`.
VoronoiResult remove_overlaps_voronoi(std::vector<SizedNode> nodes, std::optional<Rect> bounds = std::nullopt,
                                      const VoronoiOptions& options = {});

}  // namespace sfdraw
