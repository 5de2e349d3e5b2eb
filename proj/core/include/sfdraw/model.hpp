#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sfdraw/errors.hpp"

namespace sfdraw {

enum class VariableKind { stock, flow, auxiliary };

std::string_view to_string(VariableKind kind);
std::optional<VariableKind> parse_variable_kind(std::string_view text);

// One equation of the model: its name, kind, and the names it references.
struct VariableDecl {
  std::string name;
  VariableKind kind = VariableKind::auxiliary;
  std::vector<std::string> depends_on;
  std::vector<std::string> inflows;   // stocks only
  std::vector<std::string> outflows;  // stocks only

  bool operator==(const VariableDecl&) const = default;
};

using VarId = std::size_t;

// `source` appears in the equation of `target`.
struct DepEdge {
  VarId source = 0;
  VarId target = 0;

  auto operator<=>(const DepEdge&) const = default;
};

enum class FlowDirection { into, out_of };

struct FlowLink {
  VarId flow = 0;
  VarId stock = 0;
  FlowDirection direction = FlowDirection::into;

  auto operator<=>(const FlowLink&) const = default;
};

// Variables in declaration order plus the resolved dependency and flow
// incidence structure. Construction never throws on semantic problems:
// references that do not resolve are left out of the derived sets and are
// reported by validate().
class ModelGraph {
 public:
  ModelGraph() = default;
  explicit ModelGraph(std::vector<VariableDecl> variables);

  const std::vector<VariableDecl>& variables() const { return variables_; }
  const VariableDecl& variable(VarId id) const { return variables_.at(id); }
  std::size_t size() const { return variables_.size(); }
  bool empty() const { return variables_.empty(); }

  // Ordered by target declaration order, then by position in depends_on.
  // Self references are dropped.
  const std::vector<DepEdge>& dep_edges() const { return dep_edges_; }
  // Ordered by stock declaration order; inflows before outflows.
  const std::vector<FlowLink>& flow_links() const { return flow_links_; }

  std::optional<VarId> find(std::string_view name) const;

  // Flow links touching a stock or a flow, in flow_links() order.
  std::vector<FlowLink> links_of_stock(VarId stock) const;
  std::vector<FlowLink> links_of_flow(VarId flow) const;

  bool operator==(const ModelGraph& other) const { return variables_ == other.variables_; }

 private:
  std::vector<VariableDecl> variables_;
  std::vector<DepEdge> dep_edges_;
  std::vector<FlowLink> flow_links_;
  std::unordered_map<std::string, VarId> index_;
};

enum class ModelFormat { model_json, edge_list };

std::optional<ModelFormat> parse_model_format(std::string_view text);

// Syntax and schema only; throws ParseError.
std::vector<VariableDecl> parse_declarations(std::string_view source, ModelFormat format);

// One diagnostic per violated rule. Empty iff the model is well formed.
std::vector<Diagnostic> validate(const ModelGraph& model);

// parse_declarations + validate. Throws ParseError or ModelError.
ModelGraph parse_model(std::string_view source, ModelFormat format);

// model-json text; parse_model(serialize_model(m), model_json) == m.
std::string serialize_model(const ModelGraph& model);

}  // namespace sfdraw
