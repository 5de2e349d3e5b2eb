#include "sfdraw/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sfdraw {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(const Diagnostic& diagnostic) {
  return diagnostic.rule + " [" + diagnostic.variable + "]: " + diagnostic.message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string text = "model failed validation";
  for (const auto& d : diagnostics) text += "\n  " + to_string(d);
  return text;
}

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::stock: return "stock";
    case VariableKind::flow: return "flow";
    case VariableKind::auxiliary: return "auxiliary";
  }
  return "auxiliary";
}

std::optional<VariableKind> parse_variable_kind(std::string_view text) {
  if (text == "stock") return VariableKind::stock;
  if (text == "flow") return VariableKind::flow;
  if (text == "auxiliary") return VariableKind::auxiliary;
  return std::nullopt;
}

std::optional<ModelFormat> parse_model_format(std::string_view text) {
  if (text == "model-json") return ModelFormat::model_json;
  if (text == "edge-list") return ModelFormat::edge_list;
  return std::nullopt;
}

ModelGraph::ModelGraph(std::vector<VariableDecl> variables) : variables_(std::move(variables)) {
  for (VarId id = 0; id < variables_.size(); ++id) index_.emplace(variables_[id].name, id);

  std::set<DepEdge> seen_edges;
  for (VarId target = 0; target < variables_.size(); ++target) {
    for (const auto& ref : variables_[target].depends_on) {
      auto source = find(ref);
      if (!source || *source == target) continue;
      DepEdge edge{*source, target};
      if (seen_edges.insert(edge).second) dep_edges_.push_back(edge);
    }
  }

  std::set<FlowLink> seen_links;
  auto add_links = [&](VarId stock, const std::vector<std::string>& flows, FlowDirection direction) {
    for (const auto& ref : flows) {
      auto flow = find(ref);
      if (!flow || variables_[*flow].kind != VariableKind::flow) continue;
      FlowLink link{*flow, stock, direction};
      if (seen_links.insert(link).second) flow_links_.push_back(link);
    }
  };
  for (VarId id = 0; id < variables_.size(); ++id) {
    if (variables_[id].kind != VariableKind::stock) continue;
    add_links(id, variables_[id].inflows, FlowDirection::into);
    add_links(id, variables_[id].outflows, FlowDirection::out_of);
  }
}

std::optional<VarId> ModelGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<FlowLink> ModelGraph::links_of_stock(VarId stock) const {
  std::vector<FlowLink> out;
  for (const auto& link : flow_links_)
    if (link.stock == stock) out.push_back(link);
  return out;
}

std::vector<FlowLink> ModelGraph::links_of_flow(VarId flow) const {
  std::vector<FlowLink> out;
  for (const auto& link : flow_links_)
    if (link.flow == flow) out.push_back(link);
  return out;
}

std::vector<Diagnostic> validate(const ModelGraph& model) {
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::size_t> name_count;
  for (const auto& v : model.variables()) ++name_count[v.name];

  std::set<std::string> reported_duplicates;
  for (const auto& v : model.variables()) {
    if (v.name.empty()) {
      diagnostics.push_back({"empty-name", v.name, "variable name is empty"});
      continue;
    }
    if (name_count[v.name] > 1 && reported_duplicates.insert(v.name).second)
      diagnostics.push_back({"duplicate-name", v.name, "duplicate name " + v.name});
  }

  for (const auto& v : model.variables()) {
    for (const auto& ref : v.depends_on)
      if (!model.find(ref)) diagnostics.push_back({"unresolved-identifier", v.name, "unresolved identifier " + ref});

    const bool has_flows = !v.inflows.empty() || !v.outflows.empty();
    if (has_flows && v.kind != VariableKind::stock)
      diagnostics.push_back({"flows-on-non-stock", v.name, "inflows/outflows are only permitted on stocks"});

    for (const auto* list : {&v.inflows, &v.outflows}) {
      for (const auto& ref : *list) {
        auto id = model.find(ref);
        if (!id) {
          diagnostics.push_back({"unresolved-identifier", v.name, "unresolved identifier " + ref});
        } else if (model.variable(*id).kind != VariableKind::flow) {
          diagnostics.push_back({"not-a-flow", v.name, ref + " is attached as a flow but is not a flow"});
        }
      }
    }
  }

  // Counted over declarations (not the deduplicated links) so that a flow
  // listed as inflow of two stocks is caught even through validate-only use.
  std::map<VarId, std::pair<std::size_t, std::size_t>> attachment;  // into, out_of
  for (VarId id = 0; id < model.size(); ++id) {
    const auto& v = model.variable(id);
    if (v.kind != VariableKind::stock) continue;
    auto count = [&](const std::vector<std::string>& refs, bool into) {
      std::set<VarId> distinct;
      for (const auto& ref : refs)
        if (auto f = model.find(ref); f && model.variable(*f).kind == VariableKind::flow) distinct.insert(*f);
      for (VarId f : distinct) (into ? attachment[f].first : attachment[f].second) += 1;
    };
    count(v.inflows, true);
    count(v.outflows, false);
  }
  for (const auto& [flow, counts] : attachment) {
    if (counts.first > 1 || counts.second > 1)
      diagnostics.push_back({"flow-over-attached", model.variable(flow).name, "flow over-attached"});
  }
  return diagnostics;
}

namespace {

std::string line_column(std::string_view source, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<std::string> string_list(const json& entry, const char* key, const std::string& where) {
  std::vector<std::string> out;
  auto it = entry.find(key);
  if (it == entry.end()) return out;
  if (!it->is_array()) throw ParseError("expected an array of strings", where + "/" + key);
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& item = (*it)[i];
    if (!item.is_string())
      throw ParseError("expected a string", where + "/" + key + "/" + std::to_string(i));
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<VariableDecl> parse_model_json(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the 1-based byte index of the offending character.
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("syntax error", line_column(source, byte));
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", "/");
  for (const auto& [key, value] : doc.items())
    if (key != "variables") throw ParseError("unknown field", "/" + key);
  auto variables = doc.find("variables");
  if (variables == doc.end() || !variables->is_array())
    throw ParseError("expected an array", "/variables");

  std::vector<VariableDecl> decls;
  decls.reserve(variables->size());
  for (std::size_t i = 0; i < variables->size(); ++i) {
    const auto& entry = (*variables)[i];
    const std::string where = "/variables/" + std::to_string(i);
    if (!entry.is_object()) throw ParseError("expected an object", where);
    for (const auto& [key, value] : entry.items()) {
      if (key != "name" && key != "kind" && key != "depends_on" && key != "inflows" && key != "outflows")
        throw ParseError("unknown field", where + "/" + key);
    }
    VariableDecl decl;
    auto name = entry.find("name");
    if (name == entry.end() || !name->is_string()) throw ParseError("expected a string", where + "/name");
    decl.name = name->get<std::string>();
    auto kind = entry.find("kind");
    if (kind == entry.end() || !kind->is_string()) throw ParseError("expected a string", where + "/kind");
    auto parsed = parse_variable_kind(kind->get<std::string>());
    if (!parsed) throw ParseError("unknown kind '" + kind->get<std::string>() + "'", where + "/kind");
    decl.kind = *parsed;
    decl.depends_on = string_list(entry, "depends_on", where);
    decl.inflows = string_list(entry, "inflows", where);
    decl.outflows = string_list(entry, "outflows", where);
    decls.push_back(std::move(decl));
  }
  return decls;
}

std::vector<VariableDecl> parse_edge_list(std::string_view source) {
  std::vector<VariableDecl> decls;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, decls.size());
    if (inserted) decls.push_back({name, VariableKind::auxiliary, {}, {}, {}});
    return it->second;
  };

  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    ++line_number;
    start = end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream tokens{std::string(line)};
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words.size() != 2)
      throw ParseError("expected 'source target'", "line " + std::to_string(line_number) + ", column 1");

    std::size_t source_id = intern(words[0]);
    std::size_t target_id = intern(words[1]);
    auto& deps = decls[target_id].depends_on;
    if (source_id != target_id && std::find(deps.begin(), deps.end(), words[0]) == deps.end())
      deps.push_back(words[0]);
  }
  return decls;
}

}  // namespace

std::vector<VariableDecl> parse_declarations(std::string_view source, ModelFormat format) {
  return format == ModelFormat::model_json ? parse_model_json(source) : parse_edge_list(source);
}

ModelGraph parse_model(std::string_view source, ModelFormat format) {
  ModelGraph model(parse_declarations(source, format));
  if (auto diagnostics = validate(model); !diagnostics.empty()) throw ModelError(std::move(diagnostics));
  return model;
}

std::string serialize_model(const ModelGraph& model) {
  ordered_json variables = ordered_json::array();
  for (const auto& v : model.variables()) {
    ordered_json entry;
    entry["name"] = v.name;
    entry["kind"] = std::string(to_string(v.kind));
    entry["depends_on"] = v.depends_on;
    if (!v.inflows.empty()) entry["inflows"] = v.inflows;
    if (!v.outflows.empty()) entry["outflows"] = v.outflows;
    variables.push_back(std::move(entry));
  }
  ordered_json doc;
  doc["variables"] = std::move(variables);
  return doc.dump(2) + "\n";
}

}  // namespace sfdraw
