#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfdraw/community.hpp"
#include "sfdraw/diagram.hpp"

namespace sfdraw {

inline constexpr int kLayoutFormatVersion = 1;

struct ModuleRecord {
  int id = 0;
  std::string label;
  std::optional<int> parent;
  std::vector<int> children;
  std::vector<std::string> members;  // names of the layout nodes held directly
  bool irreducible = false;
  std::optional<double> modularity;
  std::size_t node_total = 0;
  Diagram diagram;

  bool operator==(const ModuleRecord&) const = default;
};

struct LayoutDocument {
  int format_version = kLayoutFormatVersion;
  std::vector<ModuleRecord> modules;  // by module id

  bool operator==(const LayoutDocument&) const = default;
};

// `diagrams` is indexed by module id.
LayoutDocument to_document(const ModuleTree& tree, const LayoutGraph& lg, std::span<const Diagram> diagrams);

// Pretty-printed JSON; import_layout(export_layout(doc)) == doc and the text
// survives export -> import -> export unchanged.
std::string export_layout(const LayoutDocument& document);

// Throws ParseError on malformed JSON, schema violations, or an unsupported
// format_version.
LayoutDocument import_layout(std::string_view text);

}  // namespace sfdraw
