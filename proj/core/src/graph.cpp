#include "sfdraw/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace sfdraw {

DirectedGraph::DirectedGraph(std::size_t node_count, std::span<const Edge> edges)
    : out_(node_count), in_(node_count), undirected_(node_count) {
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw std::out_of_range("edge endpoint out of range");
    if (u == v) continue;
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  auto normalize = [](std::vector<NodeId>& list) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  };
  for (std::size_t i = 0; i < node_count; ++i) {
    normalize(out_[i]);
    normalize(in_[i]);
    edge_count_ += out_[i].size();
    undirected_[i] = out_[i];
    undirected_[i].insert(undirected_[i].end(), in_[i].begin(), in_[i].end());
    normalize(undirected_[i]);
  }
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= out_.size()) return false;
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId v : out_[u]) out.emplace_back(u, v);
  return out;
}

DirectedGraph DirectedGraph::reversed() const {
  std::vector<Edge> flipped;
  flipped.reserve(edge_count_);
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId v : out_[u]) flipped.emplace_back(v, u);
  return DirectedGraph(out_.size(), flipped);
}

int DistanceMatrix::diameter() const {
  int best = 0;
  for (int d : d_)
    if (d != kUnreachable) best = std::max(best, d);
  return best;
}

DistanceMatrix all_pairs_shortest_paths(const DirectedGraph& g, bool treat_as_undirected) {
  const std::size_t n = g.node_count();
  DistanceMatrix dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(s);
    dist.at(s, s) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      int next = dist.at(s, u) + 1;
      auto adjacent = treat_as_undirected ? g.neighbors(u) : g.out_neighbors(u);
      for (NodeId w : adjacent) {
        if (dist.at(s, w) != kUnreachable) continue;
        dist.at(s, w) = next;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

// Hop distance from every node to `target` along directed edges, never
// passing through `excluded`.
std::vector<int> distances_to(const DirectedGraph& g, NodeId target, NodeId excluded) {
  std::vector<int> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue{target};
  dist[target] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId x = queue[head];
    for (NodeId p : g.in_neighbors(x)) {
      if (p == excluded || dist[p] != kUnreachable) continue;
      dist[p] = dist[x] + 1;
      queue.push_back(p);
    }
  }
  return dist;
}

std::optional<FeedbackLoop> short_loop_by_bfs(const DirectedGraph& g, NodeId u, NodeId v, std::size_t min_length) {
  if (min_length <= 2 && g.has_edge(v, u)) return FeedbackLoop{{u, v}};

  const auto dist = distances_to(g, u, v);
  NodeId first = 0;
  int best = kUnreachable;
  for (NodeId w : g.out_neighbors(v)) {
    if (w == u || dist[w] == kUnreachable) continue;
    if (dist[w] < best) {
      best = dist[w];
      first = w;
    }
  }
  if (best == kUnreachable) return std::nullopt;

  FeedbackLoop loop{{u, v}};
  NodeId current = first;
  while (current != u) {
    loop.nodes.push_back(current);
    NodeId next = current;
    for (NodeId x : g.out_neighbors(current)) {
      if (x != v && dist[x] != kUnreachable && dist[x] == dist[current] - 1) {
        next = x;
        break;
      }
    }
    current = next;
  }
  return loop;
}

// Iterative deepening over simple paths; only needed for min_length > 3.
std::optional<FeedbackLoop> short_loop_by_search(const DirectedGraph& g, NodeId u, NodeId v, std::size_t min_length) {
  const std::size_t n = g.node_count();
  std::vector<char> on_path(n, 0);
  std::vector<NodeId> path{u, v};
  on_path[u] = on_path[v] = 1;

  std::function<bool(NodeId, std::size_t)> extend = [&](NodeId at, std::size_t want) -> bool {
    if (path.size() == want) return g.has_edge(at, u);
    for (NodeId w : g.out_neighbors(at)) {
      if (on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      if (extend(w, want)) return true;
      path.pop_back();
      on_path[w] = 0;
    }
    return false;
  };

  for (std::size_t length = min_length; length <= n; ++length) {
    if (extend(v, length)) return FeedbackLoop{path};
  }
  return std::nullopt;
}

}  // namespace

std::optional<FeedbackLoop> shortest_feedback_loop_through(const DirectedGraph& g, NodeId u, NodeId v,
                                                           std::size_t min_length) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("query edge is not in the graph");
  if (min_length < 2) throw std::invalid_argument("feedback loops have at least two nodes");
  if (min_length <= 3) return short_loop_by_bfs(g, u, v, min_length);
  return short_loop_by_search(g, u, v, min_length);
}

std::map<Edge, double> edge_betweenness(const DirectedGraph& g, bool treat_as_undirected) {
  const std::size_t n = g.node_count();
  std::map<Edge, double> score;
  auto key = [&](NodeId a, NodeId b) { return treat_as_undirected ? Edge{std::min(a, b), std::max(a, b)} : Edge{a, b}; };
  for (auto [a, b] : g.edges()) score[key(a, b)] = 0.0;

  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<int> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      NodeId x = order[head];
      auto adjacent = treat_as_undirected ? g.neighbors(x) : g.out_neighbors(x);
      for (NodeId w : adjacent) {
        if (dist[w] < 0) {
          dist[w] = dist[x] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[x] + 1) sigma[w] += sigma[x];
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      auto predecessors = treat_as_undirected ? g.neighbors(w) : g.in_neighbors(w);
      for (NodeId x : predecessors) {
        if (dist[x] < 0 || dist[x] + 1 != dist[w]) continue;
        double share = sigma[x] / sigma[w] * (1.0 + delta[w]);
        score[key(x, w)] += share;
        delta[x] += share;
      }
    }
  }

  if (treat_as_undirected)
    for (auto& [edge, value] : score) value /= 2.0;
  return score;
}

}  // namespace sfdraw
