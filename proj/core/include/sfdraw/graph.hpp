#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sfdraw {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

// Simple directed graph over nodes [0, n). Out-edge lists are sorted by
// target; self loops and duplicate edges are dropped on construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> out_neighbors(NodeId u) const { return out_.at(u); }
  std::span<const NodeId> in_neighbors(NodeId u) const { return in_.at(u); }
  // Union of in- and out-neighbors, sorted.
  std::span<const NodeId> neighbors(NodeId u) const { return undirected_.at(u); }

  bool has_edge(NodeId u, NodeId v) const;
  std::vector<Edge> edges() const;

  // Same node set with every edge reversed.
  DirectedGraph reversed() const;

 private:
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<std::vector<NodeId>> undirected_;
  std::size_t edge_count_ = 0;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Row-major n x n table of hop counts.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

  std::size_t size() const { return n_; }
  int at(NodeId i, NodeId j) const { return d_[i * n_ + j]; }
  int& at(NodeId i, NodeId j) { return d_[i * n_ + j]; }
  bool reachable(NodeId i, NodeId j) const { return at(i, j) != kUnreachable; }

  // Largest finite entry; 0 for graphs without edges.
  int diameter() const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> d_;
};

// Breadth-first search from every node.
DistanceMatrix all_pairs_shortest_paths(const DirectedGraph& g, bool treat_as_undirected);

// Directed cycle listed from the query edge's source: nodes[0] = u, nodes[1] = v.
struct FeedbackLoop {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.size(); }
  bool operator==(const FeedbackLoop&) const = default;
};

// Shortest simple directed cycle containing edge (u, v) with at least
// `min_length` nodes. Among equally short cycles the one whose node sequence
// after v is lexicographically smallest wins. Throws std::invalid_argument when
// (u, v) is not an edge or min_length < 2.
std::optional<FeedbackLoop> shortest_feedback_loop_through(const DirectedGraph& g, NodeId u, NodeId v,
                                                           std::size_t min_length = 3);

// Fractional shortest-path counts per edge (Brandes accumulation). In the
// undirected case each unordered node pair contributes once and keys are
// (min, max); otherwise keys are the directed edges and ordered pairs count.
std::map<Edge, double> edge_betweenness(const DirectedGraph& g, bool treat_as_undirected);

}  // namespace sfdraw
