#pragma once

// Independent reference implementations used to check the library. Each one
// takes the slow, obvious route.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sfdraw/community.hpp"
#include "sfdraw/graph.hpp"
#include "sfdraw/overlap.hpp"
#include "sfdraw/stress.hpp"

namespace oracle {

using sfdraw::Edge;
using sfdraw::NodeId;

// Q = 1/(2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j].
inline double modularity_from_adjacency(const sfdraw::UndirectedGraph& g, const std::vector<int>& assignment) {
  const std::size_t n = g.node_count();
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment[i] != assignment[j]) continue;
      const double a = g.has_edge(i, j) ? 1.0 : 0.0;
      q += a - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
    }
  }
  return q / two_m;
}

// Calls `visit` with every set partition of n elements as a restricted
// growth string.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      visit(labels);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
}

inline double best_modularity(const sfdraw::UndirectedGraph& g) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_partition(g.node_count(), [&](const std::vector<int>& p) { best = std::max(best, modularity_from_adjacency(g, p)); });
  return best;
}

inline std::vector<std::vector<int>> floyd_warshall(const sfdraw::DirectedGraph& g, bool undirected) {
  const std::size_t n = g.node_count();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges()) {
    d[u][v] = 1;
    if (undirected) d[v][u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Every simple directed cycle, each listed once starting at its smallest node.
inline std::vector<std::vector<NodeId>> simple_cycles(const sfdraw::DirectedGraph& g) {
  std::vector<std::vector<NodeId>> cycles;
  const std::size_t n = g.node_count();
  std::vector<NodeId> path;
  std::vector<char> on_path(n, 0);
  std::function<void(NodeId, NodeId)> dfs = [&](NodeId start, NodeId u) {
    for (NodeId v : g.out_neighbors(u)) {
      if (v == start) {
        cycles.push_back(path);
      } else if (v > start && !on_path[v]) {
        on_path[v] = 1;
        path.push_back(v);
        dfs(start, v);
        path.pop_back();
        on_path[v] = 0;
      }
    }
  };
  for (NodeId s = 0; s < n; ++s) {
    path = {s};
    on_path.assign(n, 0);
    on_path[s] = 1;
    dfs(s, s);
  }
  return cycles;
}

// Length of the shortest simple cycle of at least `min_length` nodes that
// uses the edge (u, v); 0 when there is none.
inline std::size_t shortest_cycle_through(const sfdraw::DirectedGraph& g, NodeId u, NodeId v,
                                          std::size_t min_length) {
  std::size_t best = 0;
  for (const auto& cycle : simple_cycles(g)) {
    if (cycle.size() < min_length) continue;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] == u && cycle[(i + 1) % cycle.size()] == v) {
        if (best == 0 || cycle.size() < best) best = cycle.size();
      }
    }
  }
  return best;
}

// Edge betweenness by listing every shortest path between every unordered
// pair and splitting the pair's unit weight evenly among them.
inline std::map<Edge, double> betweenness_by_enumeration(const sfdraw::UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<Edge> directed;
  for (auto [a, b] : g.edges()) {
    directed.push_back({a, b});
    directed.push_back({b, a});
  }
  const auto dist = floyd_warshall(sfdraw::DirectedGraph(n, directed), false);
  std::map<Edge, double> out;
  for (auto e : g.edges()) out[e] = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (dist[s][t] >= std::numeric_limits<int>::max() / 4) continue;
      std::vector<std::vector<NodeId>> paths;
      std::vector<NodeId> path{s};
      std::function<void(NodeId)> walk = [&](NodeId u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (NodeId w : g.neighbors(u)) {
          if (dist[s][w] == dist[s][u] + 1 && dist[w][t] == dist[u][t] - 1) {
            path.push_back(w);
            walk(w);
            path.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths)
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
          out[{std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])}] += 1.0 / static_cast<double>(paths.size());
    }
  }
  return out;
}

// Central differences of the stress function.
inline std::vector<sfdraw::Point> stress_gradient_fd(const sfdraw::StressModel& model,
                                                     std::vector<sfdraw::Point> x, double step) {
  std::vector<sfdraw::Point> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      double& coord = axis == 0 ? x[i].x : x[i].y;
      const double saved = coord;
      coord = saved + step;
      const double up = sfdraw::stress(model, x);
      coord = saved - step;
      const double down = sfdraw::stress(model, x);
      coord = saved;
      (axis == 0 ? grad[i].x : grad[i].y) = (up - down) / (2.0 * step);
    }
  }
  return grad;
}

// Hildreth's dual coordinate ascent for minimize |x - d|^2 subject to
// x_r - x_l >= gap.
inline std::vector<double> hildreth(const std::vector<double>& desired,
                                    const std::vector<sfdraw::SeparationConstraint>& cons, double tol = 1e-13,
                                    std::size_t max_sweeps = 2000000) {
  std::vector<double> lambda(cons.size(), 0.0);
  std::vector<double> x = desired;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t k = 0; k < cons.size(); ++k) {
      const auto& c = cons[k];
      // a_k = e_r - e_l, |a_k|^2 = 2; x = d + sum lambda_k a_k / 2.
      const double violation = c.gap - (x[c.right] - x[c.left]);
      const double next = std::max(0.0, lambda[k] + violation);
      const double delta = next - lambda[k];
      if (delta != 0.0) {
        lambda[k] = next;
        x[c.right] += delta / 2.0;
        x[c.left] -= delta / 2.0;
        change = std::max(change, std::abs(delta));
      }
    }
    if (change < tol) break;
  }
  return x;
}

inline double squared_displacement(const std::vector<double>& a, const std::vector<double>& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
  return total;
}

// Random connected graph: a random spanning tree plus extra edges.
inline sfdraw::UndirectedGraph random_connected(std::mt19937_64& rng, std::size_t n, double extra_p) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({static_cast<NodeId>(rng() % v), v});
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (coin(rng) < extra_p) edges.push_back({a, b});
  return sfdraw::UndirectedGraph(n, edges);
}

inline sfdraw::DirectedGraph random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b && coin(rng) < p) edges.push_back({a, b});
  return sfdraw::DirectedGraph(n, edges);
}

// Exact pairwise test on box bounds.
inline std::size_t intersecting_pairs(const std::vector<sfdraw::SizedNode>& nodes) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const auto a = nodes[i].box();
      const auto b = nodes[j].box();
      const bool apart = a.right() <= b.left() || b.right() <= a.left() || a.bottom() <= b.top() || b.bottom() <= a.top();
      if (!apart) ++count;
    }
  }
  return count;
}

}  // namespace oracle
