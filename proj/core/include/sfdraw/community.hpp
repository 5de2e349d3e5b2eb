#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfdraw/graph.hpp"
#include "sfdraw/mainchain.hpp"

namespace sfdraw {

// Symmetrized simple graph: reciprocal directed pairs collapse to one edge,
// self loops are dropped.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(std::size_t node_count, std::span<const Edge> edges);
  static UndirectedGraph from(const DirectedGraph& g);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }
  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.at(u); }
  bool has_edge(NodeId u, NodeId v) const;
  // (min, max) pairs in lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }

  // Subgraph on `nodes` (renumbered 0..k-1 in the given order).
  UndirectedGraph induced(std::span<const NodeId> nodes) const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
};

// Community assignment with ids contiguous from 0, numbered in order of each
// community's smallest node.
struct Partition {
  std::vector<int> assignment;
  int community_count = 0;
  double modularity = 0.0;
  bool degenerate = false;  // modularity undefined (no edges); reported as 0

  std::vector<std::vector<NodeId>> groups() const;
};

// Renumbers labels contiguously by first occurrence.
std::vector<int> normalize_assignment(std::span<const int> assignment);

// Newman-Girvan modularity: sum over communities of e_cc - a_c^2, where e_cc
// is the fraction of edges inside c and a_c the fraction of edge ends in c.
// Throws std::domain_error for graphs without edges.
double modularity(const UndirectedGraph& g, std::span<const int> assignment);

// Greedy agglomeration state. Community ids are the smallest node index of
// each community; ids stay valid until the community is merged away.
class CnmState {
 public:
  explicit CnmState(const UndirectedGraph& g);

  std::vector<int> communities() const;  // alive ids, ascending
  bool alive(int id) const;

  // Change in modularity if i and j merged. Throws std::out_of_range for
  // unknown ids and std::invalid_argument when i == j.
  double delta_q(int i, int j) const;

  // Best connected pair: largest delta_q, ties to the smallest (i, j).
  std::optional<std::pair<int, int>> best_pair() const;

  // Merges into min(i, j); returns the surviving id.
  int merge(int i, int j);

  double modularity() const;
  std::vector<int> assignment() const;  // raw ids per node
  Partition partition() const;

 private:
  // Numerator of delta_q over the common denominator 2 m^2; exact.
  std::int64_t delta_numerator(int i, int j) const;

  std::size_t edge_total_ = 0;
  std::vector<int> owner_;              // node -> community id
  std::vector<std::int64_t> degree_;    // sum of degrees per community id
  std::vector<std::int64_t> internal_;  // internal edges per community id
  std::vector<std::map<int, std::int64_t>> between_;  // edges between communities
  std::vector<char> alive_;
};

// Called before each merge with the current state, the pair, and the delta.
using MergeObserver = std::function<void(const CnmState&, int, int, double)>;

// Merges the best pair until every delta_q is negative.
Partition cnm_cluster(const UndirectedGraph& g, const MergeObserver& observer = {});

struct Dendrogram {
  std::vector<std::vector<int>> levels;          // normalized assignments, coarsest first
  std::vector<std::vector<Edge>> removal_steps;  // edges removed per step
};

// Repeatedly removes every edge tied for the highest betweenness and records
// each new component split. Throws std::domain_error for edgeless graphs.
Dendrogram girvan_newman_dendrogram(const UndirectedGraph& g);

// (between-cluster edges / between-cluster pairs) / (within-cluster edges /
// within-cluster pairs); nullopt when either pair count is zero.
std::optional<double> density_ratio(const UndirectedGraph& g, std::span<const int> assignment);

// Level of the dendrogram with the smallest density ratio, ties to fewer
// clusters. Falls back to the coarsest level when no level has a ratio.
Partition girvan_newman_cluster(const UndirectedGraph& g);

enum class ClusterAlgorithm { cnm, girvan_newman };

struct Module {
  int id = 0;
  std::string label;
  std::optional<int> parent;
  std::vector<int> children;
  std::vector<NodeId> members;  // layout nodes held directly by this module
  bool irreducible = false;
  std::optional<double> modularity;  // set when this module was clustered
  std::size_t node_total = 0;         // layout nodes in the whole subtree
};

// Modules indexed by id; module 0 is the root.
struct ModuleTree {
  std::vector<Module> modules;

  const Module& root() const { return modules.front(); }
  std::vector<NodeId> subtree_nodes(int id) const;
  // Module that directly holds each layout node.
  std::vector<int> owner_of_nodes(std::size_t node_count) const;
};

// Hand-assigned top-level modules: label plus layout node ids.
struct ModuleHint {
  std::string label;
  std::vector<NodeId> nodes;
};

// One line per module: `label: id, id, ...`. Blank lines and `#` comments are
// ignored. Throws ParseError on malformed lines, unknown or repeated ids.
std::vector<ModuleHint> parse_hints(std::string_view text, std::size_t node_count);

// Clusters every module with `threshold` or more layout nodes and recurses
// into the children. Nodes isolated within a module stay in that module.
// Hints, when given, replace the clustering of the root.
ModuleTree recursive_modularize(const LayoutGraph& lg, std::size_t threshold, ClusterAlgorithm algorithm,
                                std::span<const ModuleHint> hints = {});

// `src dst` per edge from outgoing connections, ids in node order.
std::string write_edge_list(const LayoutGraph& lg);

// Cluster file in the two-column `NId<TAB>CmtyId` layout, header included.
std::string write_communities(const Partition& partition);

// Accepts either the two-column layout (recognized by its `# NId` header) or
// one cluster per line as whitespace-separated ids. Every id in
// [0, node_count) must appear exactly once; throws ParseError otherwise.
Partition read_communities(std::string_view text, const UndirectedGraph& g);

}  // namespace sfdraw
