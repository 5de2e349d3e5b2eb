#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "sfdraw/mainchain.hpp"

using namespace sfdraw;

namespace {

bool axis_aligned(const FlowPolyline& pipe) {
  for (std::size_t i = 0; i + 1 < pipe.points.size(); ++i) {
    const Point a = pipe.points[i];
    const Point b = pipe.points[i + 1];
    if (a.x != b.x && a.y != b.y) return false;
  }
  return true;
}

}  // namespace

TEST(DetectChains, PartitionStocksAndAttachedFlowsOnFixtures) {
  for (const auto& f : fixtures::all()) {
    SCOPED_TRACE(f.file);
    auto m = fixtures::load(f);
    auto chains = detect_main_chains(m);
    std::multiset<VarId> covered;
    for (const auto& c : chains)
      for (VarId v : c.members()) covered.insert(v);
    for (VarId v = 0; v < m.size(); ++v) {
      const auto& var = m.variable(v);
      const bool attached_flow = var.kind == VariableKind::flow && !m.links_of_flow(v).empty();
      const std::size_t expected = var.kind == VariableKind::stock || attached_flow ? 1 : 0;
      EXPECT_EQ(covered.count(v), expected) << var.name;
    }
    // Stocks joined by a flow share a chain.
    for (const auto& link : m.flow_links()) {
      for (const auto& other : m.links_of_flow(link.flow)) {
        auto holder = [&](VarId s) {
          for (std::size_t i = 0; i < chains.size(); ++i)
            if (chains[i].contains(s)) return i;
          return chains.size();
        };
        EXPECT_EQ(holder(link.stock), holder(other.stock));
      }
    }
  }
}

TEST(DetectChains, World2HasFiveChains) {
  auto m = fixtures::load(fixtures::all()[0]);
  auto chains = detect_main_chains(m);
  EXPECT_EQ(chains.size(), 5u);
}

TEST(ChainLayout, LinearThreeStockChain) {
  auto m = parse_model(fixtures::read("linear_chain.json"), ModelFormat::model_json);
  auto chains = detect_main_chains(m);
  ASSERT_EQ(chains.size(), 1u);
  Geometry g;
  auto c = layout_main_chain(chains[0], m, g);
  const VarId s1 = *m.find("S1");
  const VarId s2 = *m.find("S2");
  const VarId s3 = *m.find("S3");
  EXPECT_EQ(c.central_stock, s2);
  EXPECT_EQ(c.boxes.at(s2).center, (Point{0.0, 0.0}));
  EXPECT_EQ(c.boxes.at(s1).center, (Point{-g.chain_column_width, 0.0}));
  EXPECT_EQ(c.boxes.at(s3).center, (Point{g.chain_column_width, 0.0}));
  EXPECT_TRUE(c.clouds.empty());
  for (const auto& [flow, pipe] : c.pipes) EXPECT_EQ(pipe.points.size(), 2u);
}

TEST(ChainLayout, AxisAlignedPipesOnFixtures) {
  Geometry g;
  for (const auto& f : fixtures::all()) {
    SCOPED_TRACE(f.file);
    auto m = fixtures::load(f);
    for (auto c : detect_main_chains(m)) {
      c = layout_main_chain(c, m, g);
      for (const auto& [flow, pipe] : c.pipes) EXPECT_TRUE(axis_aligned(pipe)) << m.variable(flow).name;
      for (VarId s : c.stocks)
        for (VarId t : c.stocks)
          if (s < t) EXPECT_FALSE(overlaps(c.boxes.at(s), c.boxes.at(t)));
      for (const auto& [id, box] : c.boxes) {
        EXPECT_GE(box.left(), c.bounds.left());
        EXPECT_LE(box.right(), c.bounds.right());
      }
    }
  }
}

TEST(ChainLayout, CloudsForUnmatchedEnds) {
  auto m = parse_model(fixtures::read("population.json"), ModelFormat::model_json);
  auto c = layout_main_chain(detect_main_chains(m)[0], m, Geometry{});
  ASSERT_EQ(c.clouds.size(), 2u);
  std::set<FlowEnd> ends;
  for (const auto& cloud : c.clouds) ends.insert(cloud.end);
  EXPECT_EQ(ends.size(), 2u);
}

TEST(ChainLayout, BranchingChainPutsCentralStockAtOrigin) {
  auto m = parse_model(fixtures::read("branching_chain.json"), ModelFormat::model_json);
  auto chains = detect_main_chains(m);
  ASSERT_EQ(chains.size(), 1u);
  Geometry g;
  auto c = layout_main_chain(chains[0], m, g);
  EXPECT_EQ(c.central_stock, *m.find("inventory"));
  EXPECT_EQ(c.boxes.at(*m.find("inventory")).center, (Point{0, 0}));
  EXPECT_EQ(c.boxes.at(*m.find("east_stock")).center.x, g.chain_column_width);
  EXPECT_EQ(c.boxes.at(*m.find("west_stock")).center.x, g.chain_column_width);
  EXPECT_NE(c.boxes.at(*m.find("east_stock")).center.y, c.boxes.at(*m.find("west_stock")).center.y);
}

TEST(RouteFlow, StraightOrS) {
  auto straight = route_flow({0, 0}, {10, 0});
  EXPECT_EQ(straight.points.size(), 2u);
  auto s = route_flow({0, 0}, {10, 6});
  ASSERT_EQ(s.points.size(), 4u);
  EXPECT_EQ(s.points[1], (Point{5, 0}));
  EXPECT_EQ(s.points[2], (Point{5, 6}));
  EXPECT_EQ(valve_position(s), (Point{5, 3}));
}

TEST(PortOffsets, SymmetricAboutCenter) {
  auto one = port_offsets(1, 35);
  EXPECT_EQ(one, std::vector<double>{0.0});
  auto three = port_offsets(3, 40);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_DOUBLE_EQ(three[0], -10.0);
  EXPECT_DOUBLE_EQ(three[1], 0.0);
  EXPECT_DOUBLE_EQ(three[2], 10.0);
}

TEST(RedirectEdges, ChainNodesAbsorbMembers) {
  auto m = parse_model(fixtures::read("population.json"), ModelFormat::model_json);
  auto chains = detect_main_chains(m);
  auto lg = redirect_edges(m, chains);
  EXPECT_EQ(lg.size(), m.size() - 3 + 1);
  EXPECT_EQ(lg.nodes[0].kind, LayoutNodeKind::chain);
  EXPECT_EQ(lg.nodes[0].name, "chain:Population");
  const NodeId chain = lg.node_of[*m.find("births")];
  EXPECT_EQ(chain, lg.node_of[*m.find("Population")]);
  std::size_t originals = 0;
  for (const auto& e : lg.edges) {
    EXPECT_NE(e.source, e.target);
    originals += e.originals.size();
    for (const auto& dep : e.originals) {
      EXPECT_EQ(lg.node_of[dep.source], e.source);
      EXPECT_EQ(lg.node_of[dep.target], e.target);
    }
  }
  EXPECT_EQ(originals + lg.tally.internal_dropped, m.dep_edges().size());
  EXPECT_EQ(lg.tally.kept, lg.edges.size());
}
