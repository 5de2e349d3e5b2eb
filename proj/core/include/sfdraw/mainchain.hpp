#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sfdraw/geometry.hpp"
#include "sfdraw/graph.hpp"
#include "sfdraw/model.hpp"

namespace sfdraw {

enum class FlowEnd { source, sink };

// Right-angle pipe. Two points: one horizontal segment. Four points:
// horizontal, vertical, horizontal.
struct FlowPolyline {
  std::vector<Point> points;

  bool operator==(const FlowPolyline&) const = default;
};

// Synthesized endpoint for a flow that has no stock on one end.
struct Cloud {
  VarId flow = 0;
  FlowEnd end = FlowEnd::source;
  Rect box;

  bool operator==(const Cloud&) const = default;
};

// Stocks joined through shared flows, agglomerated into one layout node.
// Geometry is expressed in the chain's private frame, where the central stock
// sits at (0, 0).
struct MainChain {
  std::vector<VarId> stocks;  // declaration order
  std::vector<VarId> flows;   // declaration order

  bool laid_out = false;
  VarId central_stock = 0;
  std::map<VarId, Rect> boxes;  // stock rectangles and valve boxes
  std::map<VarId, FlowPolyline> pipes;
  std::vector<Cloud> clouds;
  Rect bounds;  // union of everything drawn, plus the margin

  bool contains(VarId id) const;
  std::vector<VarId> members() const;  // stocks then flows
};

// Connected components of the stock/flow incidence graph, one per stock
// group, in order of each group's first stock.
std::vector<MainChain> detect_main_chains(const ModelGraph& model);

// Central stock (least mean hop distance over flow connections; declaration
// order breaks ties) at the origin, breadth-first placement of upstream stocks
// one column left and downstream stocks one column right, then flow routing.
MainChain layout_main_chain(MainChain chain, const ModelGraph& model, const Geometry& geometry);

// Two points when the ports share a y coordinate, otherwise an S through the
// midpoint x.
FlowPolyline route_flow(Point source_port, Point sink_port);

// Vertical offsets of `count` ports on one side of length `side_length`,
// symmetric about the side's center at pitch side_length / (count + 1).
std::vector<double> port_offsets(std::size_t count, double side_length);

// Valve location on a pipe: midpoint of its middle segment.
Point valve_position(const FlowPolyline& pipe);

enum class LayoutNodeKind { variable, chain };

struct LayoutNode {
  LayoutNodeKind kind = LayoutNodeKind::variable;
  VarId variable = 0;     // kind == variable
  std::size_t chain = 0;  // kind == chain: index into the chain list
  std::string name;
  double half_width = 0.0;  // filled by assign_node_sizes
  double half_height = 0.0;
};

// A redirected edge. `originals` remembers every dependency edge that mapped
// onto it so links can be re-attached to chain members later.
struct LayoutEdge {
  NodeId source = 0;
  NodeId target = 0;
  std::vector<DepEdge> originals;
};

struct EdgeTally {
  std::size_t kept = 0;
  std::size_t internal_dropped = 0;
  std::size_t collapsed = 0;
};

// Plain variables plus one node per chain, ordered by the declaration
// position of each node's first member.
struct LayoutGraph {
  std::vector<LayoutNode> nodes;
  std::vector<LayoutEdge> edges;       // sorted by (source, target)
  std::vector<NodeId> node_of;         // VarId -> NodeId
  EdgeTally tally;

  DirectedGraph directed() const;
  std::size_t size() const { return nodes.size(); }
};

LayoutGraph redirect_edges(const ModelGraph& model, std::span<const MainChain> chains);

}  // namespace sfdraw
