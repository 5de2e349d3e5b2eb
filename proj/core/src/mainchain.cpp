#include "sfdraw/mainchain.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <tuple>

namespace sfdraw {

bool MainChain::contains(VarId id) const {
  return std::binary_search(stocks.begin(), stocks.end(), id) || std::binary_search(flows.begin(), flows.end(), id);
}

std::vector<VarId> MainChain::members() const {
  std::vector<VarId> out = stocks;
  out.insert(out.end(), flows.begin(), flows.end());
  return out;
}

std::vector<MainChain> detect_main_chains(const ModelGraph& model) {
  std::vector<MainChain> chains;
  std::vector<char> visited(model.size(), 0);

  for (VarId start = 0; start < model.size(); ++start) {
    if (model.variable(start).kind != VariableKind::stock || visited[start]) continue;

    std::set<VarId> stocks;
    std::set<VarId> flows;
    std::deque<VarId> frontier{start};
    visited[start] = 1;
    while (!frontier.empty()) {
      VarId stock = frontier.front();
      frontier.pop_front();
      stocks.insert(stock);
      for (const auto& link : model.links_of_stock(stock)) {
        if (!flows.insert(link.flow).second) continue;
        for (const auto& other : model.links_of_flow(link.flow)) {
          if (visited[other.stock]) continue;
          visited[other.stock] = 1;
          frontier.push_back(other.stock);
        }
      }
    }
    MainChain chain;
    chain.stocks.assign(stocks.begin(), stocks.end());
    chain.flows.assign(flows.begin(), flows.end());
    chains.push_back(std::move(chain));
  }
  return chains;
}

FlowPolyline route_flow(Point source_port, Point sink_port) {
  if (source_port.y == sink_port.y) return {{source_port, sink_port}};
  double mid_x = (source_port.x + sink_port.x) / 2.0;
  return {{source_port, {mid_x, source_port.y}, {mid_x, sink_port.y}, sink_port}};
}

std::vector<double> port_offsets(std::size_t count, double side_length) {
  std::vector<double> offsets(count);
  const double pitch = side_length / static_cast<double>(count + 1);
  const double center = (static_cast<double>(count) - 1.0) / 2.0;
  for (std::size_t j = 0; j < count; ++j) offsets[j] = (static_cast<double>(j) - center) * pitch;
  return offsets;
}

Point valve_position(const FlowPolyline& pipe) {
  if (pipe.points.size() == 4) return midpoint(pipe.points[1], pipe.points[2]);
  return midpoint(pipe.points.front(), pipe.points.back());
}

namespace {

struct FlowEnds {
  std::optional<VarId> source;  // stock the flow drains
  std::optional<VarId> sink;    // stock the flow fills
};

FlowEnds ends_of(const ModelGraph& model, VarId flow) {
  FlowEnds ends;
  for (const auto& link : model.links_of_flow(flow)) {
    if (link.direction == FlowDirection::out_of)
      ends.source = link.stock;
    else
      ends.sink = link.stock;
  }
  return ends;
}

VarId pick_central_stock(const MainChain& chain, const ModelGraph& model) {
  const std::size_t k = chain.stocks.size();
  if (k == 1) return chain.stocks.front();

  auto local = [&](VarId stock) {
    return static_cast<std::size_t>(std::lower_bound(chain.stocks.begin(), chain.stocks.end(), stock) -
                                    chain.stocks.begin());
  };
  std::vector<Edge> edges;
  for (VarId flow : chain.flows) {
    auto ends = ends_of(model, flow);
    if (ends.source && ends.sink) edges.emplace_back(local(*ends.source), local(*ends.sink));
  }
  auto dist = all_pairs_shortest_paths(DirectedGraph(k, edges), true);

  std::size_t best = 0;
  double best_mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) total += dist.reachable(i, j) ? dist.at(i, j) : static_cast<double>(k);
    double mean = total / static_cast<double>(k - 1);
    if (i == 0 || mean < best_mean) {
      best = i;
      best_mean = mean;
    }
  }
  return chain.stocks[best];
}

}  // namespace

MainChain layout_main_chain(MainChain chain, const ModelGraph& model, const Geometry& geometry) {
  const double hw = geometry.stock_width / 2.0;
  const double hh = geometry.stock_height / 2.0;
  const double slot_pitch = geometry.stock_height + geometry.vertical_spacing;
  const double column = geometry.chain_column_width;

  chain.boxes.clear();
  chain.pipes.clear();
  chain.clouds.clear();
  chain.central_stock = pick_central_stock(chain, model);

  std::map<VarId, Point> placed;
  auto collides = [&](Point p) {
    for (const auto& [id, q] : placed) {
      if (std::abs(p.x - q.x) < geometry.stock_width + geometry.vertical_spacing &&
          std::abs(p.y - q.y) < slot_pitch)
        return true;
    }
    return false;
  };
  // Slots already taken by another stock push the newcomer further down.
  auto place = [&](VarId stock, Point p) {
    while (collides(p)) p.y += slot_pitch;
    placed.emplace(stock, p);
  };

  std::deque<VarId> candidates{chain.central_stock};
  place(chain.central_stock, {0.0, 0.0});

  auto side_flows = [&](VarId stock, FlowDirection direction) {
    std::vector<VarId> flows;
    for (const auto& link : model.links_of_stock(stock))
      if (link.direction == direction) flows.push_back(link.flow);
    return flows;
  };

  while (!candidates.empty()) {
    VarId candidate = candidates.front();
    candidates.pop_front();
    const Point at = placed.at(candidate);
    for (auto direction : {FlowDirection::into, FlowDirection::out_of}) {
      auto flows = side_flows(candidate, direction);
      const double height = static_cast<double>(flows.size()) * slot_pitch;
      const double x = direction == FlowDirection::into ? at.x - column : at.x + column;
      for (std::size_t j = 0; j < flows.size(); ++j) {
        auto ends = ends_of(model, flows[j]);
        auto neighbor = direction == FlowDirection::into ? ends.source : ends.sink;
        // Slots of absent or already placed stocks stay blank.
        if (!neighbor || placed.count(*neighbor)) continue;
        const double y = at.y - height / 2.0 + (static_cast<double>(j) + 0.5) * slot_pitch;
        place(*neighbor, {x, y});
        candidates.push_back(*neighbor);
      }
    }
  }

  for (const auto& [stock, p] : placed) chain.boxes[stock] = Rect{p, hw, hh};

  std::map<VarId, Point> source_port;  // flow -> port on its upstream stock
  std::map<VarId, Point> sink_port;
  for (VarId stock : chain.stocks) {
    const Point at = placed.at(stock);
    auto inflows = side_flows(stock, FlowDirection::into);
    auto outflows = side_flows(stock, FlowDirection::out_of);
    auto in_offsets = port_offsets(inflows.size(), geometry.stock_height);
    auto out_offsets = port_offsets(outflows.size(), geometry.stock_height);
    for (std::size_t j = 0; j < inflows.size(); ++j) sink_port[inflows[j]] = {at.x - hw, at.y + in_offsets[j]};
    for (std::size_t j = 0; j < outflows.size(); ++j)
      source_port[outflows[j]] = {at.x + hw, at.y + out_offsets[j]};
  }

  const double cloud_hw = geometry.cloud_width / 2.0;
  const double cloud_hh = geometry.cloud_height / 2.0;
  for (VarId flow : chain.flows) {
    Point from;
    Point to;
    auto src = source_port.find(flow);
    auto dst = sink_port.find(flow);
    if (src != source_port.end() && dst != sink_port.end()) {
      from = src->second;
      to = dst->second;
    } else if (dst != sink_port.end()) {
      to = dst->second;
      Point center{to.x - column / 2.0, to.y};
      chain.clouds.push_back({flow, FlowEnd::source, Rect{center, cloud_hw, cloud_hh}});
      from = {center.x + cloud_hw, to.y};
    } else {
      from = src->second;
      Point center{from.x + column / 2.0, from.y};
      chain.clouds.push_back({flow, FlowEnd::sink, Rect{center, cloud_hw, cloud_hh}});
      to = {center.x - cloud_hw, from.y};
    }
    FlowPolyline pipe = route_flow(from, to);
    chain.boxes[flow] = Rect{valve_position(pipe), geometry.valve_radius, geometry.valve_radius};
    chain.pipes[flow] = std::move(pipe);
  }

  std::optional<Rect> content;
  auto include = [&](const Rect& r) { content = content ? unite(*content, r) : r; };
  for (const auto& [id, box] : chain.boxes) {
    include(box);
    include(label_box(box, model.variable(id).name, geometry));
  }
  for (const auto& cloud : chain.clouds) include(cloud.box);
  for (const auto& [flow, pipe] : chain.pipes)
    for (Point p : pipe.points) include(Rect{p, 0.0, 0.0});

  const double pad = geometry.margin / 2.0;
  chain.bounds = Rect{content->center, content->half_width + pad, content->half_height + pad};
  chain.laid_out = true;
  return chain;
}

DirectedGraph LayoutGraph::directed() const {
  std::vector<Edge> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.emplace_back(e.source, e.target);
  return DirectedGraph(nodes.size(), pairs);
}

LayoutGraph redirect_edges(const ModelGraph& model, std::span<const MainChain> chains) {
  constexpr std::size_t kNoChain = static_cast<std::size_t>(-1);
  std::vector<std::size_t> chain_of(model.size(), kNoChain);
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (VarId member : chains[c].members()) chain_of[member] = c;

  LayoutGraph lg;
  lg.node_of.assign(model.size(), 0);
  std::vector<std::optional<NodeId>> chain_node(chains.size());
  for (VarId id = 0; id < model.size(); ++id) {
    const std::size_t c = chain_of[id];
    if (c == kNoChain) {
      lg.node_of[id] = lg.nodes.size();
      lg.nodes.push_back({LayoutNodeKind::variable, id, 0, model.variable(id).name});
      continue;
    }
    if (!chain_node[c]) {
      chain_node[c] = lg.nodes.size();
      const std::string& first_stock = model.variable(chains[c].stocks.front()).name;
      lg.nodes.push_back({LayoutNodeKind::chain, 0, c, "chain:" + first_stock});
    }
    lg.node_of[id] = *chain_node[c];
  }

  std::map<Edge, std::size_t> slot;
  for (const auto& dep : model.dep_edges()) {
    NodeId s = lg.node_of[dep.source];
    NodeId t = lg.node_of[dep.target];
    if (s == t) {
      ++lg.tally.internal_dropped;
      continue;
    }
    auto [it, inserted] = slot.emplace(Edge{s, t}, lg.edges.size());
    if (inserted) {
      lg.edges.push_back({s, t, {dep}});
      ++lg.tally.kept;
    } else {
      lg.edges[it->second].originals.push_back(dep);
      ++lg.tally.collapsed;
    }
  }
  std::sort(lg.edges.begin(), lg.edges.end(), [](const LayoutEdge& a, const LayoutEdge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return lg;
}

}  // namespace sfdraw
