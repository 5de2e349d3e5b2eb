#include "sfdraw/diagram.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sfdraw {

std::string_view to_string(EntityShape shape) {
  switch (shape) {
    case EntityShape::stock: return "stock";
    case EntityShape::flow: return "flow";
    case EntityShape::auxiliary: return "auxiliary";
    case EntityShape::module: return "module";
    case EntityShape::cloud: return "cloud";
  }
  return "auxiliary";
}

EntityShape parse_entity_shape(std::string_view text) {
  for (auto shape : {EntityShape::stock, EntityShape::flow, EntityShape::auxiliary, EntityShape::module,
                     EntityShape::cloud})
    if (to_string(shape) == text) return shape;
  throw std::invalid_argument("unknown entity shape " + std::string(text));
}

const Entity* Diagram::find(std::string_view id) const {
  auto it = std::lower_bound(entities.begin(), entities.end(), id,
                             [](const Entity& e, std::string_view key) { return e.id < key; });
  if (it == entities.end() || it->id != id) return nullptr;
  return &*it;
}

Rect Diagram::bounds() const {
  std::optional<Rect> out;
  auto include = [&](const Rect& r) { out = out ? unite(*out, r) : r; };
  for (const auto& node : nodes) include(node.box);
  for (const auto& e : entities) {
    include(e.box);
    for (Point p : e.pipe.points) include(Rect{p, 0.0, 0.0});
  }
  for (const auto& link : links) include(Rect{link.geometry.midpoint, 0.0, 0.0});
  return out.value_or(Rect{});
}

}  // namespace sfdraw
