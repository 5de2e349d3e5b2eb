#include "sfdraw/assemble.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "sfdraw/errors.hpp"

namespace sfdraw {

std::string_view to_string(OverlapMethod method) {
  switch (method) {
    case OverlapMethod::vpsc: return "vpsc";
    case OverlapMethod::voronoi: return "voronoi";
    case OverlapMethod::none: return "none";
  }
  return "none";
}

std::optional<OverlapMethod> parse_overlap_method(std::string_view text) {
  if (text == "vpsc") return OverlapMethod::vpsc;
  if (text == "voronoi") return OverlapMethod::voronoi;
  if (text == "none") return OverlapMethod::none;
  return std::nullopt;
}

namespace {

// Vertical distance from a variable node's center up to its symbol's center;
// the name sits below the symbol.
double symbol_lift(const Geometry& geometry) { return (2.0 + geometry.label_height) / 2.0; }

double loose_flow_span(const Geometry& geometry) { return geometry.chain_column_width; }

}  // namespace

void assign_node_sizes(LayoutGraph& lg, const ModelGraph& model, std::span<const MainChain> chains,
                       const Geometry& geometry) {
  const double lift = 2.0 * symbol_lift(geometry);
  for (auto& node : lg.nodes) {
    double width = 0.0;
    double height = 0.0;
    if (node.kind == LayoutNodeKind::chain) {
      const MainChain& chain = chains[node.chain];
      if (!chain.laid_out) throw PipelineError("chain-layout", node.name, "chain has no layout");
      node.half_width = chain.bounds.half_width;
      node.half_height = chain.bounds.half_height;
      continue;
    }
    const VariableDecl& var = model.variable(node.variable);
    const double label = geometry.label_width(var.name);
    if (var.kind == VariableKind::flow) {
      width = std::max(loose_flow_span(geometry) + geometry.cloud_width, label);
      height = std::max(geometry.cloud_height, 2.0 * geometry.valve_radius) + lift;
    } else if (var.kind == VariableKind::stock) {
      width = std::max(geometry.stock_width, label);
      height = geometry.stock_height + lift;
    } else {
      width = std::max(2.0 * geometry.aux_radius, label);
      height = 2.0 * geometry.aux_radius + lift;
    }
    node.half_width = (width + geometry.margin) / 2.0;
    node.half_height = (height + geometry.margin) / 2.0;
  }
}

DirectedGraph ModuleGraph::directed() const {
  std::vector<Edge> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.emplace_back(e.source, e.target);
  return DirectedGraph(nodes.size(), pairs);
}

ModuleGraph build_module_graph(const ModuleTree& tree, int module_id, const LayoutGraph& lg,
                               const Geometry& geometry) {
  const Module& module = tree.modules.at(static_cast<std::size_t>(module_id));
  ModuleGraph mg;
  mg.module_id = module_id;
  mg.module_of_node.assign(lg.size(), -1);

  std::vector<NodeId> members = module.members;
  std::sort(members.begin(), members.end());
  for (NodeId n : members) {
    mg.module_of_node[n] = static_cast<int>(mg.nodes.size());
    const LayoutNode& ln = lg.nodes.at(n);
    mg.nodes.push_back({n, std::nullopt, ln.name, ln.half_width, ln.half_height});
  }
  for (int child : module.children) {
    const int index = static_cast<int>(mg.nodes.size());
    for (NodeId n : tree.subtree_nodes(child)) mg.module_of_node[n] = index;
    mg.nodes.push_back({std::nullopt, child, "module:" + std::to_string(child),
                        (geometry.module_width + geometry.margin) / 2.0,
                        (geometry.module_height + geometry.margin) / 2.0});
  }

  std::map<Edge, std::size_t> slot;
  for (const auto& e : lg.edges) {
    const int s = mg.module_of_node[e.source];
    const int t = mg.module_of_node[e.target];
    if (s < 0 || t < 0 || s == t) continue;
    Edge key{static_cast<NodeId>(s), static_cast<NodeId>(t)};
    auto [it, inserted] = slot.emplace(key, mg.edges.size());
    if (inserted) mg.edges.push_back({key.first, key.second, {}});
    auto& originals = mg.edges[it->second].originals;
    originals.insert(originals.end(), e.originals.begin(), e.originals.end());
  }
  std::sort(mg.edges.begin(), mg.edges.end(),
            [](const ModuleEdge& a, const ModuleEdge& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });
  return mg;
}

std::uint64_t module_seed(std::uint64_t seed, int module_id) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(module_id) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ModulePlacement place_module(const ModuleGraph& mg, const LayoutOptions& options) {
  ModulePlacement placement;
  const DirectedGraph g = mg.directed();
  const StressModel model = build_stress_model(g, options.geometry.unit_length);
  placement.stress = minimize_stress(model, module_seed(options.seed, mg.module_id), options.stress);

  std::vector<SizedNode> sized(mg.nodes.size());
  for (std::size_t i = 0; i < mg.nodes.size(); ++i)
    sized[i] = {placement.stress.positions[i], mg.nodes[i].half_width, mg.nodes[i].half_height};
  switch (options.overlap) {
    case OverlapMethod::vpsc: sized = remove_overlaps_vpsc(std::move(sized)); break;
    case OverlapMethod::voronoi: sized = remove_overlaps_voronoi(std::move(sized)).nodes; break;
    case OverlapMethod::none: break;
  }
  placement.centers.resize(sized.size());
  for (std::size_t i = 0; i < sized.size(); ++i) placement.centers[i] = sized[i].center;
  return placement;
}

namespace {

Rect translate(const Rect& r, Point by) { return {r.center + by, r.half_width, r.half_height}; }

std::string cloud_id(const std::string& flow, FlowEnd end) {
  return "cloud:" + flow + (end == FlowEnd::source ? ":source" : ":sink");
}

}  // namespace

Diagram assemble_module_diagram(const ModuleGraph& mg, std::span<const Point> centers, const ModuleTree& tree,
                                const LayoutGraph& lg, const ModelGraph& model,
                                std::span<const MainChain> chains, const Geometry& geometry) {
  const Module& module = tree.modules.at(static_cast<std::size_t>(mg.module_id));
  Diagram d;
  d.module_id = mg.module_id;
  d.label = module.label;
  d.child_modules = module.children;

  const double lift = symbol_lift(geometry);
  for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
    const ModuleNode& node = mg.nodes[i];
    const Point c = centers[i];
    d.nodes.push_back({node.name, Rect{c, node.half_width, node.half_height}});

    if (node.child_module) {
      const Module& child = tree.modules.at(static_cast<std::size_t>(*node.child_module));
      d.entities.push_back({node.name, EntityShape::module, child.label,
                            Rect{c, geometry.module_width / 2.0, geometry.module_height / 2.0}, {}});
      continue;
    }
    const LayoutNode& ln = lg.nodes.at(*node.layout_node);
    if (ln.kind == LayoutNodeKind::chain) {
      const MainChain& chain = chains[ln.chain];
      const Point offset = c - chain.bounds.center;
      for (VarId stock : chain.stocks) {
        const std::string& name = model.variable(stock).name;
        d.entities.push_back({name, EntityShape::stock, name, translate(chain.boxes.at(stock), offset), {}});
      }
      for (VarId flow : chain.flows) {
        const std::string& name = model.variable(flow).name;
        FlowPolyline pipe = chain.pipes.at(flow);
        for (Point& p : pipe.points) p = p + offset;
        d.entities.push_back({name, EntityShape::flow, name, translate(chain.boxes.at(flow), offset), pipe});
      }
      for (const Cloud& cloud : chain.clouds) {
        d.entities.push_back(
            {cloud_id(model.variable(cloud.flow).name, cloud.end), EntityShape::cloud, "", translate(cloud.box, offset), {}});
      }
      continue;
    }
    const VariableDecl& var = model.variable(ln.variable);
    const Point symbol{c.x, c.y - lift};
    if (var.kind == VariableKind::flow) {
      const double half_span = loose_flow_span(geometry) / 2.0;
      const double cloud_hw = geometry.cloud_width / 2.0;
      const double cloud_hh = geometry.cloud_height / 2.0;
      Rect source{{symbol.x - half_span, symbol.y}, cloud_hw, cloud_hh};
      Rect sink{{symbol.x + half_span, symbol.y}, cloud_hw, cloud_hh};
      FlowPolyline pipe = route_flow({source.right(), symbol.y}, {sink.left(), symbol.y});
      d.entities.push_back({var.name, EntityShape::flow, var.name,
                            Rect{valve_position(pipe), geometry.valve_radius, geometry.valve_radius}, pipe});
      d.entities.push_back({cloud_id(var.name, FlowEnd::source), EntityShape::cloud, "", source, {}});
      d.entities.push_back({cloud_id(var.name, FlowEnd::sink), EntityShape::cloud, "", sink, {}});
    } else if (var.kind == VariableKind::stock) {
      d.entities.push_back({var.name, EntityShape::stock, var.name,
                            Rect{symbol, geometry.stock_width / 2.0, geometry.stock_height / 2.0}, {}});
    } else {
      d.entities.push_back(
          {var.name, EntityShape::auxiliary, var.name, Rect{symbol, geometry.aux_radius, geometry.aux_radius}, {}});
    }
  }
  std::sort(d.entities.begin(), d.entities.end(), [](const Entity& a, const Entity& b) { return a.id < b.id; });

  // Entity standing for a variable at this level: itself, or the placeholder
  // of the child module that holds it.
  auto entity_of = [&](VarId var) -> std::string {
    const NodeId layout_node = lg.node_of.at(var);
    const ModuleNode& node = mg.nodes.at(static_cast<std::size_t>(mg.module_of_node.at(layout_node)));
    return node.child_module ? node.name : model.variable(var).name;
  };

  struct Pending {
    std::string from;
    std::string to;
    std::size_t from_node;
    std::size_t to_node;
  };
  std::map<std::pair<std::string, std::string>, Pending> unique;
  for (const auto& e : mg.edges) {
    for (const DepEdge& dep : e.originals) {
      std::string from = entity_of(dep.source);
      std::string to = entity_of(dep.target);
      unique.emplace(std::pair{from, to}, Pending{from, to, e.source, e.target});
    }
  }

  std::vector<LinkEnds> ends;
  ends.reserve(unique.size());
  for (const auto& [key, link] : unique) {
    const Entity* a = d.find(link.from);
    const Entity* b = d.find(link.to);
    if (!a || !b) throw PipelineError("assemble", link.from + " -> " + link.to, "link endpoint has no entity");
    ends.push_back({link.from_node, link.to_node, boundary_point(a->box, b->box.center),
                    boundary_point(b->box, a->box.center)});
  }
  auto arcs = curve_edges(mg.directed(), centers, ends);
  std::size_t i = 0;
  for (const auto& [key, link] : unique) {
    d.links.push_back({link.from, link.to, link.from_node, link.to_node, arcs[i]});
    ++i;
  }
  return d;
}

Diagram layout_module(const ModuleTree& tree, int module_id, const LayoutGraph& lg, const ModelGraph& model,
                      std::span<const MainChain> chains, const LayoutOptions& options) {
  const ModuleGraph mg = build_module_graph(tree, module_id, lg, options.geometry);
  ModulePlacement placement = place_module(mg, options);
  Diagram d = assemble_module_diagram(mg, placement.centers, tree, lg, model, chains, options.geometry);
  d.stress = placement.stress.final_stress;
  d.stress_iterations = placement.stress.iterations;
  d.stress_converged = placement.stress.converged;
  return d;
}

}  // namespace sfdraw
