#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sfdraw/overlap.hpp"

using namespace sfdraw;

namespace {

std::vector<SizedNode> random_boxes(std::mt19937_64& rng, std::size_t n, double spread) {
  std::uniform_real_distribution<double> pos(0.0, spread);
  std::uniform_real_distribution<double> half(5.0, 25.0);
  std::vector<SizedNode> nodes(n);
  for (auto& node : nodes) node = {{pos(rng), pos(rng)}, half(rng), half(rng)};
  return nodes;
}

// Random acyclic constraint set: left index always smaller than right.
std::vector<SeparationConstraint> random_constraints(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<SeparationConstraint> out;
  std::uniform_real_distribution<double> gap(0.0, 10.0);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t a = rng() % n;
    std::size_t b = rng() % n;
    if (a == b) continue;
    out.push_back({std::min(a, b), std::max(a, b), gap(rng)});
  }
  return out;
}

}  // namespace

TEST(SolveSeparation, SingleConstraint) {
  std::vector<double> d{0.0, 0.0};
  std::vector<SeparationConstraint> c{{0, 1, 1.0}};
  auto x = solve_separation(d, c);
  EXPECT_NEAR(x[0], -0.5, 1e-12);
  EXPECT_NEAR(x[1], 0.5, 1e-12);
}

TEST(SolveSeparation, SatisfiedConstraintsLeaveInputAlone) {
  std::vector<double> d{0.0, 5.0, 9.0};
  std::vector<SeparationConstraint> c{{0, 1, 1.0}, {1, 2, 2.0}};
  EXPECT_EQ(solve_separation(d, c), d);
}

TEST(SolveSeparation, MatchesHildrethOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    std::vector<double> d(n);
    for (auto& v : d) v = pos(rng);
    auto cons = random_constraints(rng, n, rng() % (2 * n));
    auto fast = solve_separation(d, cons);
    auto slow = oracle::hildreth(d, cons);
    for (const auto& c : cons) EXPECT_GE(fast[c.right] - fast[c.left], c.gap - 1e-7);
    EXPECT_NEAR(oracle::squared_displacement(fast, d), oracle::squared_displacement(slow, d),
                1e-6 * (1.0 + oracle::squared_displacement(slow, d)));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(fast[i], slow[i], 1e-5);
  }
}

TEST(SolveSeparation, RejectsBadIndices) {
  std::vector<double> d{0.0};
  std::vector<SeparationConstraint> c{{0, 3, 1.0}};
  EXPECT_THROW(solve_separation(d, c), std::invalid_argument);
}

TEST(Vpsc, OverlapFreeUnchanged) {
  std::vector<SizedNode> nodes{{{0, 0}, 5, 5}, {{20, 0}, 5, 5}, {{0, 30}, 5, 5}};
  EXPECT_EQ(remove_overlaps_vpsc(nodes)[1].center, nodes[1].center);
  auto out = remove_overlaps_vpsc(nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) EXPECT_EQ(out[i].center, nodes[i].center);
}

TEST(Vpsc, CoincidentUnitSquaresMoveOneUnitTotal) {
  std::vector<SizedNode> nodes{{{0, 0}, 0.5, 0.5}, {{0, 0}, 0.5, 0.5}};
  auto out = remove_overlaps_vpsc(nodes);
  EXPECT_EQ(count_overlaps(out), 0u);
  const double moved = total_displacement(nodes, out);
  EXPECT_NEAR(moved, 1.0, 1e-6);
  // Separated along exactly one axis.
  const bool horizontal = out[0].center.y == out[1].center.y;
  const bool vertical = out[0].center.x == out[1].center.x;
  EXPECT_TRUE(horizontal != vertical);
}

TEST(Vpsc, RandomInstancesBecomeOverlapFree) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    auto nodes = random_boxes(rng, 50, 200.0);
    auto out = remove_overlaps_vpsc(nodes);
    EXPECT_EQ(oracle::intersecting_pairs(out), 0u);
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_EQ(out[i].half_width, nodes[i].half_width);
      EXPECT_EQ(out[i].half_height, nodes[i].half_height);
    }
  }
}

TEST(Voronoi, CellsTileTheBounds) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::vector<Point> sites(30);
  for (auto& s : sites) s = {pos(rng), pos(rng)};
  const Rect bounds = Rect::from_bounds(0, 0, 100, 100);
  auto cells = voronoi_cells(sites, bounds);
  double area = 0.0;
  for (const auto& cell : cells) {
    double a = 0.0;
    for (std::size_t i = 0; i < cell.size(); ++i) a += cross(cell[i], cell[(i + 1) % cell.size()]);
    area += std::abs(a) / 2.0;
  }
  EXPECT_NEAR(area, 100.0 * 100.0, 1e-6);
  // Each cell's points are nearer to its own site than to any other.
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Point c = polygon_centroid(cells[i]);
    for (std::size_t j = 0; j < sites.size(); ++j) EXPECT_LE(distance(c, sites[i]), distance(c, sites[j]) + 1e-9);
  }
}

TEST(Voronoi, CentroidOfSquare) {
  std::vector<Point> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  EXPECT_EQ(polygon_centroid(square), (Point{1, 1}));
}

TEST(Voronoi, OverlapFreeInputIsFixedPoint) {
  std::vector<SizedNode> nodes{{{0, 0}, 5, 5}, {{50, 0}, 5, 5}};
  auto r = remove_overlaps_voronoi(nodes);
  EXPECT_EQ(r.nodes[0].center, nodes[0].center);
  EXPECT_EQ(r.nodes[1].center, nodes[1].center);
  EXPECT_EQ(r.iterations, 0u);
}

TEST(Voronoi, CoincidentPointsSeparateOnFirstIteration) {
  std::vector<SizedNode> nodes{{{10, 10}, 1, 1}, {{10, 10}, 1, 1}};
  auto r = remove_overlaps_voronoi(nodes, Rect::from_bounds(0, 0, 20, 20));
  EXPECT_EQ(count_overlaps(r.nodes), 0u);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(Voronoi, HundredNodesTerminate) {
  std::mt19937_64 rng(31);
  auto nodes = random_boxes(rng, 100, 300.0);
  auto r = remove_overlaps_voronoi(nodes);
  EXPECT_EQ(oracle::intersecting_pairs(r.nodes), 0u);
  // At most 200 iterations between successive 20% expansions of the frame.
  EXPECT_LE(r.iterations, 200u * (r.expansions + 1));
}

TEST(Voronoi, RandomInstancesBecomeOverlapFree) {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 30; ++trial) {
    auto nodes = random_boxes(rng, 50, 200.0);
    auto r = remove_overlaps_voronoi(nodes);
    EXPECT_EQ(oracle::intersecting_pairs(r.nodes), 0u);
  }
}
