#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfdraw/curve.hpp"
#include "sfdraw/geometry.hpp"
#include "sfdraw/mainchain.hpp"

namespace sfdraw {

enum class EntityShape { stock, flow, auxiliary, module, cloud };

std::string_view to_string(EntityShape shape);
EntityShape parse_entity_shape(std::string_view text);

// One drawn element. `box` is the symbol itself: the stock rectangle, the
// valve of a flow, the circle's bounding square, the module rectangle, or the
// cloud. Flows also carry their pipe.
struct Entity {
  std::string id;  // variable name, "module:<id>", or "cloud:<flow>:source|sink"
  EntityShape shape = EntityShape::auxiliary;
  std::string label;
  Rect box;
  FlowPolyline pipe;

  bool operator==(const Entity&) const = default;
};

// A positioned layout node of the module graph.
struct DiagramNode {
  std::string name;
  Rect box;

  bool operator==(const DiagramNode&) const = default;
};

struct Link {
  std::string from;  // entity ids
  std::string to;
  std::size_t from_node = 0;  // indices into Diagram::nodes
  std::size_t to_node = 0;
  ArcSpec geometry;

  bool operator==(const Link&) const = default;
};

struct Diagram {
  int module_id = 0;
  std::string label;
  std::vector<DiagramNode> nodes;
  std::vector<Entity> entities;  // sorted by id
  std::vector<Link> links;       // sorted by (from, to)
  std::vector<int> child_modules;
  double stress = 0.0;
  std::size_t stress_iterations = 0;
  bool stress_converged = true;

  const Entity* find(std::string_view id) const;
  Rect bounds() const;

  bool operator==(const Diagram&) const = default;
};

}  // namespace sfdraw
