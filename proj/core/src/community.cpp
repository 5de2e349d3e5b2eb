#include "sfdraw/community.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sfdraw/errors.hpp"

namespace sfdraw {

UndirectedGraph::UndirectedGraph(std::size_t node_count, std::span<const Edge> edges) : adjacency_(node_count) {
  std::set<Edge> unique;
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw std::out_of_range("edge endpoint out of range");
    if (u == v) continue;
    unique.emplace(std::min(u, v), std::max(u, v));
  }
  edges_.assign(unique.begin(), unique.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

UndirectedGraph UndirectedGraph::from(const DirectedGraph& g) {
  auto edges = g.edges();
  return UndirectedGraph(g.node_count(), edges);
}

bool UndirectedGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

UndirectedGraph UndirectedGraph::induced(std::span<const NodeId> nodes) const {
  std::map<NodeId, NodeId> local;
  for (NodeId i = 0; i < nodes.size(); ++i) local.emplace(nodes[i], i);
  std::vector<Edge> edges;
  for (auto [u, v] : edges_) {
    auto a = local.find(u);
    auto b = local.find(v);
    if (a != local.end() && b != local.end()) edges.emplace_back(a->second, b->second);
  }
  return UndirectedGraph(nodes.size(), edges);
}

std::vector<std::vector<NodeId>> Partition::groups() const {
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(community_count));
  for (NodeId i = 0; i < assignment.size(); ++i) out[static_cast<std::size_t>(assignment[i])].push_back(i);
  return out;
}

std::vector<int> normalize_assignment(std::span<const int> assignment) {
  std::map<int, int> relabel;
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto [it, inserted] = relabel.emplace(assignment[i], static_cast<int>(relabel.size()));
    out[i] = it->second;
  }
  return out;
}

namespace {

Partition make_partition(std::vector<int> raw, double q, bool degenerate) {
  Partition p;
  p.assignment = normalize_assignment(raw);
  p.community_count =
      p.assignment.empty() ? 0 : *std::max_element(p.assignment.begin(), p.assignment.end()) + 1;
  p.modularity = q;
  p.degenerate = degenerate;
  return p;
}

}  // namespace

double modularity(const UndirectedGraph& g, std::span<const int> assignment) {
  if (assignment.size() != g.node_count()) throw std::invalid_argument("assignment does not cover the graph");
  const double m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw std::domain_error("modularity is undefined for a graph without edges");

  std::map<int, double> inside;
  std::map<int, double> ends;
  for (auto [u, v] : g.edges())
    if (assignment[u] == assignment[v]) inside[assignment[u]] += 1.0;
  for (NodeId i = 0; i < g.node_count(); ++i) ends[assignment[i]] += static_cast<double>(g.degree(i));

  double q = 0.0;
  for (const auto& [c, total] : ends) {
    double e = inside[c] / m;
    double a = total / (2.0 * m);
    q += e - a * a;
  }
  return q;
}

CnmState::CnmState(const UndirectedGraph& g)
    : edge_total_(g.edge_count()),
      owner_(g.node_count()),
      degree_(g.node_count()),
      internal_(g.node_count(), 0),
      between_(g.node_count()),
      alive_(g.node_count(), 1) {
  for (NodeId i = 0; i < g.node_count(); ++i) {
    owner_[i] = static_cast<int>(i);
    degree_[i] = static_cast<std::int64_t>(g.degree(i));
    for (NodeId j : g.neighbors(i)) between_[i][static_cast<int>(j)] = 1;
  }
}

std::vector<int> CnmState::communities() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < alive_.size(); ++i)
    if (alive_[i]) out.push_back(static_cast<int>(i));
  return out;
}

bool CnmState::alive(int id) const {
  return id >= 0 && static_cast<std::size_t>(id) < alive_.size() && alive_[static_cast<std::size_t>(id)];
}

std::int64_t CnmState::delta_numerator(int i, int j) const {
  const auto& row = between_[static_cast<std::size_t>(i)];
  auto it = row.find(j);
  const std::int64_t e = it == row.end() ? 0 : it->second;
  const auto m = static_cast<std::int64_t>(edge_total_);
  return 2 * m * e - degree_[static_cast<std::size_t>(i)] * degree_[static_cast<std::size_t>(j)];
}

double CnmState::delta_q(int i, int j) const {
  if (!alive(i) || !alive(j)) throw std::out_of_range("unknown community id");
  if (i == j) throw std::invalid_argument("cannot merge a community with itself");
  if (edge_total_ == 0) return 0.0;
  const double m = static_cast<double>(edge_total_);
  return static_cast<double>(delta_numerator(i, j)) / (2.0 * m * m);
}

std::optional<std::pair<int, int>> CnmState::best_pair() const {
  std::optional<std::pair<int, int>> best;
  std::int64_t best_value = 0;
  for (std::size_t i = 0; i < between_.size(); ++i) {
    if (!alive_[i]) continue;
    for (const auto& [j, e] : between_[i]) {
      if (j <= static_cast<int>(i)) continue;
      std::int64_t value = delta_numerator(static_cast<int>(i), j);
      if (!best || value > best_value) {
        best = std::pair{static_cast<int>(i), j};
        best_value = value;
      }
    }
  }
  return best;
}

int CnmState::merge(int i, int j) {
  if (!alive(i) || !alive(j)) throw std::out_of_range("unknown community id");
  if (i == j) throw std::invalid_argument("cannot merge a community with itself");
  const auto a = static_cast<std::size_t>(std::min(i, j));
  const auto b = static_cast<std::size_t>(std::max(i, j));
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);

  auto link = between_[a].find(ib);
  internal_[a] += internal_[b] + (link == between_[a].end() ? 0 : link->second);
  degree_[a] += degree_[b];
  for (const auto& [k, e] : between_[b]) {
    if (k == ia) continue;
    between_[a][k] += e;
    auto& other = between_[static_cast<std::size_t>(k)];
    other.erase(ib);
    other[ia] += e;
  }
  between_[a].erase(ib);
  between_[b].clear();
  alive_[b] = 0;
  degree_[b] = 0;
  internal_[b] = 0;
  for (auto& owner : owner_)
    if (owner == ib) owner = ia;
  return ia;
}

double CnmState::modularity() const {
  if (edge_total_ == 0) return 0.0;
  const double m = static_cast<double>(edge_total_);
  double q = 0.0;
  for (std::size_t c = 0; c < alive_.size(); ++c) {
    if (!alive_[c]) continue;
    double a = static_cast<double>(degree_[c]) / (2.0 * m);
    q += static_cast<double>(internal_[c]) / m - a * a;
  }
  return q;
}

std::vector<int> CnmState::assignment() const { return owner_; }

Partition CnmState::partition() const { return make_partition(owner_, modularity(), edge_total_ == 0); }

Partition cnm_cluster(const UndirectedGraph& g, const MergeObserver& observer) {
  CnmState state(g);
  if (g.edge_count() == 0) return state.partition();
  while (auto pair = state.best_pair()) {
    double dq = state.delta_q(pair->first, pair->second);
    if (dq < 0.0) break;
    if (observer) observer(state, pair->first, pair->second, dq);
    state.merge(pair->first, pair->second);
  }
  return state.partition();
}

namespace {

std::vector<int> component_labels(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<NodeId>> adjacency(n);
  for (auto [u, v] : edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::deque<NodeId> queue{s};
    label[s] = next;
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId w : adjacency[u]) {
        if (label[w] >= 0) continue;
        label[w] = next;
        queue.push_back(w);
      }
    }
    ++next;
  }
  return label;
}

int count_of(const std::vector<int>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace

Dendrogram girvan_newman_dendrogram(const UndirectedGraph& g) {
  if (g.edge_count() == 0) throw std::domain_error("Girvan-Newman needs at least one edge");
  const std::size_t n = g.node_count();
  std::vector<Edge> remaining = g.edges();

  Dendrogram dendrogram;
  dendrogram.levels.push_back(component_labels(n, remaining));
  while (!remaining.empty()) {
    auto scores = edge_betweenness(DirectedGraph(n, remaining), true);
    double top = 0.0;
    for (const auto& [edge, value] : scores) top = std::max(top, value);
    const double cutoff = top - 1e-9 * std::max(1.0, top);

    std::vector<Edge> removed;
    std::vector<Edge> kept;
    for (const auto& edge : remaining) (scores.at(edge) >= cutoff ? removed : kept).push_back(edge);
    remaining = std::move(kept);
    dendrogram.removal_steps.push_back(std::move(removed));

    auto labels = component_labels(n, remaining);
    if (count_of(labels) > count_of(dendrogram.levels.back())) dendrogram.levels.push_back(std::move(labels));
  }
  return dendrogram;
}

std::optional<double> density_ratio(const UndirectedGraph& g, std::span<const int> assignment) {
  const std::size_t n = g.node_count();
  std::map<int, std::size_t> sizes;
  for (int c : assignment) ++sizes[c];
  double within_pairs = 0.0;
  for (const auto& [c, size] : sizes) within_pairs += static_cast<double>(size) * static_cast<double>(size - 1) / 2.0;
  const double all_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double between_pairs = all_pairs - within_pairs;

  double within_edges = 0.0;
  double between_edges = 0.0;
  for (auto [u, v] : g.edges()) (assignment[u] == assignment[v] ? within_edges : between_edges) += 1.0;
  if (within_pairs == 0.0 || between_pairs == 0.0 || within_edges == 0.0) return std::nullopt;
  return (between_edges / between_pairs) / (within_edges / within_pairs);
}

Partition girvan_newman_cluster(const UndirectedGraph& g) {
  auto dendrogram = girvan_newman_dendrogram(g);
  std::size_t chosen = 0;
  std::optional<double> best;
  for (std::size_t level = 0; level < dendrogram.levels.size(); ++level) {
    auto ratio = density_ratio(g, dendrogram.levels[level]);
    if (!ratio) continue;
    if (!best || *ratio < *best - 1e-12 * std::max(1.0, *best)) {
      best = ratio;
      chosen = level;
    }
  }
  const auto& level = dendrogram.levels[chosen];
  return make_partition(level, modularity(g, level), false);
}

std::vector<NodeId> ModuleTree::subtree_nodes(int id) const {
  std::vector<NodeId> out;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    const Module& m = modules.at(static_cast<std::size_t>(stack.back()));
    stack.pop_back();
    out.insert(out.end(), m.members.begin(), m.members.end());
    for (auto it = m.children.rbegin(); it != m.children.rend(); ++it) stack.push_back(*it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ModuleTree::owner_of_nodes(std::size_t node_count) const {
  std::vector<int> owner(node_count, -1);
  for (const auto& m : modules)
    for (NodeId node : m.members) owner.at(node) = m.id;
  return owner;
}

namespace {

std::vector<std::string> split_ids(std::string_view text) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<std::string> out;
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

NodeId parse_id(const std::string& word, std::size_t node_count, const std::string& where) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(word, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != word.size() || word.empty() || word.front() == '-') throw ParseError("expected a node id, got '" + word + "'", where);
  if (value >= node_count) throw ParseError("unknown id " + word, where);
  return static_cast<NodeId>(value);
}

std::string line_location(std::size_t line) { return "line " + std::to_string(line) + ", column 1"; }

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_number, line);
    start = end + 1;
  }
}

}  // namespace

std::vector<ModuleHint> parse_hints(std::string_view text, std::size_t node_count) {
  std::vector<ModuleHint> hints;
  std::set<NodeId> seen;
  for_each_line(text, [&](std::size_t line_number, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    auto colon = line.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'label: id, id, ...'", line_location(line_number));
    std::string label(line.substr(0, colon));
    label.erase(0, label.find_first_not_of(" \t"));
    label.erase(label.find_last_not_of(" \t") + 1);
    if (label.empty()) throw ParseError("empty module label", line_location(line_number));
    ModuleHint hint{label, {}};
    for (const auto& word : split_ids(line.substr(colon + 1))) {
      NodeId id = parse_id(word, node_count, line_location(line_number));
      if (!seen.insert(id).second) throw ParseError("id " + word + " assigned to two modules", line_location(line_number));
      hint.nodes.push_back(id);
    }
    std::sort(hint.nodes.begin(), hint.nodes.end());
    hints.push_back(std::move(hint));
  });
  return hints;
}

ModuleTree recursive_modularize(const LayoutGraph& lg, std::size_t threshold, ClusterAlgorithm algorithm,
                                std::span<const ModuleHint> hints) {
  if (threshold < 2) throw std::invalid_argument("clustering threshold must be at least 2");
  const UndirectedGraph graph = UndirectedGraph::from(lg.directed());

  ModuleTree tree;
  Module root;
  root.id = 0;
  root.label = "Module 0";
  for (NodeId i = 0; i < lg.size(); ++i) root.members.push_back(i);
  tree.modules.push_back(std::move(root));

  auto add_child = [&](int parent, std::vector<NodeId> nodes, std::string label) {
    Module child;
    child.id = static_cast<int>(tree.modules.size());
    child.label = label.empty() ? "Module " + std::to_string(child.id) : std::move(label);
    child.parent = parent;
    child.members = std::move(nodes);
    tree.modules[static_cast<std::size_t>(parent)].children.push_back(child.id);
    tree.modules.push_back(std::move(child));
  };

  std::vector<int> pending{0};
  while (!pending.empty()) {
    const int id = pending.back();
    pending.pop_back();
    std::vector<NodeId> nodes = tree.modules[static_cast<std::size_t>(id)].members;

    std::vector<std::vector<NodeId>> groups;
    std::vector<std::string> labels;
    std::vector<NodeId> loose;

    if (id == 0 && !hints.empty()) {
      std::set<NodeId> hinted;
      for (const auto& hint : hints) {
        groups.push_back(hint.nodes);
        labels.push_back(hint.label);
        hinted.insert(hint.nodes.begin(), hint.nodes.end());
      }
      for (NodeId node : nodes)
        if (!hinted.count(node)) loose.push_back(node);
    } else {
      if (nodes.size() < threshold) continue;
      Module& module = tree.modules[static_cast<std::size_t>(id)];
      UndirectedGraph sub = graph.induced(nodes);
      if (sub.edge_count() == 0) {
        module.irreducible = true;
        continue;
      }
      Partition partition = algorithm == ClusterAlgorithm::cnm ? cnm_cluster(sub) : girvan_newman_cluster(sub);
      module.modularity = partition.modularity;
      for (const auto& group : partition.groups()) {
        if (group.size() == 1 && sub.degree(group.front()) == 0) {
          loose.push_back(nodes[group.front()]);
          continue;
        }
        std::vector<NodeId> members;
        for (NodeId local : group) members.push_back(nodes[local]);
        groups.push_back(std::move(members));
        labels.emplace_back();
      }
      if (groups.size() <= 1 && loose.empty()) {
        module.irreducible = true;
        continue;
      }
    }

    tree.modules[static_cast<std::size_t>(id)].members = loose;
    const std::size_t first_child = tree.modules.size();
    for (std::size_t g = 0; g < groups.size(); ++g) add_child(id, std::move(groups[g]), labels[g]);
    // Children are visited in creation order.
    for (std::size_t c = tree.modules.size(); c-- > first_child;) pending.push_back(static_cast<int>(c));
  }

  for (auto& module : tree.modules) module.node_total = tree.subtree_nodes(module.id).size();
  return tree;
}

std::string write_edge_list(const LayoutGraph& lg) {
  std::string out;
  for (const auto& e : lg.edges) out += std::to_string(e.source) + " " + std::to_string(e.target) + "\n";
  return out;
}

std::string write_communities(const Partition& partition) {
  std::string out = "# NId\tCmtyId\n";
  for (const auto& group : partition.groups()) {
    const int community = partition.assignment[group.front()];
    for (NodeId node : group) out += std::to_string(node) + "\t" + std::to_string(community) + "\n";
  }
  return out;
}

Partition read_communities(std::string_view text, const UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  bool two_column = false;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    if (!line.empty() && line.front() == '#' && line.find("NId") != std::string_view::npos) two_column = true;
  });

  std::vector<int> raw(n, -1);
  int group_counter = 0;
  std::map<std::string, int> named_groups;
  for_each_line(text, [&](std::size_t line_number, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_ids(line);
    if (words.empty()) return;
    const std::string where = line_location(line_number);
    auto assign = [&](NodeId id, int group) {
      if (raw[id] >= 0) throw ParseError("duplicate id " + std::to_string(id), where);
      raw[id] = group;
    };
    if (two_column) {
      if (words.size() != 2) throw ParseError("expected 'NId CmtyId'", where);
      auto [it, inserted] = named_groups.emplace(words[1], static_cast<int>(named_groups.size()));
      assign(parse_id(words[0], n, where), it->second);
    } else {
      for (const auto& word : words) assign(parse_id(word, n, where), group_counter);
      ++group_counter;
    }
  });
  for (NodeId i = 0; i < n; ++i)
    if (raw[i] < 0) throw ParseError("id " + std::to_string(i) + " is not assigned to any cluster", "");

  const bool degenerate = g.edge_count() == 0;
  return make_partition(raw, degenerate ? 0.0 : modularity(g, raw), degenerate);
}

}  // namespace sfdraw
