#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sfdraw/community.hpp"
#include "sfdraw/diagram.hpp"
#include "sfdraw/mainchain.hpp"
#include "sfdraw/model.hpp"
#include "sfdraw/overlap.hpp"
#include "sfdraw/stress.hpp"

namespace sfdraw {

enum class OverlapMethod { vpsc, voronoi, none };

std::string_view to_string(OverlapMethod method);
std::optional<OverlapMethod> parse_overlap_method(std::string_view text);

// Symbol, name, and margin for variables; bounds (margin included) for
// chains. Requires laid-out chains.
void assign_node_sizes(LayoutGraph& lg, const ModelGraph& model, std::span<const MainChain> chains,
                       const Geometry& geometry);

// Node of one module's drawing: a layout node held directly by the module, or
// the placeholder of a child module.
struct ModuleNode {
  std::optional<NodeId> layout_node;
  std::optional<int> child_module;
  std::string name;
  double half_width = 0.0;
  double half_height = 0.0;
};

struct ModuleEdge {
  NodeId source = 0;
  NodeId target = 0;
  std::vector<DepEdge> originals;
};

struct ModuleGraph {
  int module_id = 0;
  std::vector<ModuleNode> nodes;  // direct members in layout order, then children
  std::vector<ModuleEdge> edges;  // sorted by (source, target), deduplicated
  std::vector<int> module_of_node;  // layout node -> index in `nodes`, or -1 outside the subtree

  DirectedGraph directed() const;
};

// Edges leaving the module's subtree are dropped; edges inside one child
// collapse into it.
ModuleGraph build_module_graph(const ModuleTree& tree, int module_id, const LayoutGraph& lg,
                               const Geometry& geometry);

struct LayoutOptions {
  OverlapMethod overlap = OverlapMethod::vpsc;
  std::uint64_t seed = 42;
  Geometry geometry;
  StressOptions stress;
};

// Seed of a module's initial placement, mixed from the run seed and module id.
std::uint64_t module_seed(std::uint64_t seed, int module_id);

struct ModulePlacement {
  std::vector<Point> centers;  // per module node
  StressResult stress;
};

// Stress layout followed by overlap removal.
ModulePlacement place_module(const ModuleGraph& mg, const LayoutOptions& options);

// Entities at their final positions, chain internals translated so the chain's
// bounding box is centered on its node, links re-attached to the member they
// originally referenced and curved.
Diagram assemble_module_diagram(const ModuleGraph& mg, std::span<const Point> centers, const ModuleTree& tree,
                                const LayoutGraph& lg, const ModelGraph& model,
                                std::span<const MainChain> chains, const Geometry& geometry);

Diagram layout_module(const ModuleTree& tree, int module_id, const LayoutGraph& lg, const ModelGraph& model,
                      std::span<const MainChain> chains, const LayoutOptions& options);

}  // namespace sfdraw
