#include "sfdraw/layout_export.hpp"

#include "json.hpp"

#include "sfdraw/errors.hpp"

namespace sfdraw {

using nlohmann::ordered_json;

LayoutDocument to_document(const ModuleTree& tree, const LayoutGraph& lg, std::span<const Diagram> diagrams) {
  LayoutDocument doc;
  for (const Module& m : tree.modules) {
    ModuleRecord record;
    record.id = m.id;
    record.label = m.label;
    record.parent = m.parent;
    record.children = m.children;
    for (NodeId n : m.members) record.members.push_back(lg.nodes.at(n).name);
    record.irreducible = m.irreducible;
    record.modularity = m.modularity;
    record.node_total = m.node_total;
    record.diagram = diagrams[static_cast<std::size_t>(m.id)];
    doc.modules.push_back(std::move(record));
  }
  return doc;
}

namespace {

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

ordered_json box_fields(ordered_json j, const Rect& r) {
  j["x"] = r.center.x;
  j["y"] = r.center.y;
  j["half_width"] = r.half_width;
  j["half_height"] = r.half_height;
  return j;
}

ordered_json module_json(const ModuleRecord& m) {
  ordered_json j;
  j["id"] = m.id;
  j["label"] = m.label;
  j["parent"] = m.parent ? ordered_json(*m.parent) : ordered_json(nullptr);
  j["children"] = m.children;
  j["members"] = m.members;
  j["irreducible"] = m.irreducible;
  j["modularity"] = m.modularity ? ordered_json(*m.modularity) : ordered_json(nullptr);
  j["node_total"] = m.node_total;
  j["stress"] = m.diagram.stress;
  j["stress_iterations"] = m.diagram.stress_iterations;
  j["stress_converged"] = m.diagram.stress_converged;

  ordered_json nodes = ordered_json::array();
  for (const auto& n : m.diagram.nodes) {
    ordered_json node;
    node["name"] = n.name;
    nodes.push_back(box_fields(std::move(node), n.box));
  }
  j["nodes"] = std::move(nodes);

  ordered_json entities = ordered_json::array();
  for (const auto& e : m.diagram.entities) {
    ordered_json entity;
    entity["id"] = e.id;
    entity["shape"] = to_string(e.shape);
    entity["label"] = e.label;
    entity = box_fields(std::move(entity), e.box);
    if (!e.pipe.points.empty()) {
      ordered_json pipe = ordered_json::array();
      for (Point p : e.pipe.points) pipe.push_back(point_json(p));
      entity["pipe"] = std::move(pipe);
    }
    entities.push_back(std::move(entity));
  }
  j["entities"] = std::move(entities);

  ordered_json links = ordered_json::array();
  for (const auto& l : m.diagram.links) {
    ordered_json link;
    link["from"] = l.from;
    link["to"] = l.to;
    link["from_node"] = l.from_node;
    link["to_node"] = l.to_node;
    link["kind"] = to_string(l.geometry.kind);
    link["start"] = point_json(l.geometry.start);
    link["end"] = point_json(l.geometry.end);
    link["midpoint"] = point_json(l.geometry.midpoint);
    if (l.geometry.kind != LinkGeometry::straight) {
      link["center"] = point_json(l.geometry.center);
      link["radius"] = l.geometry.radius;
      link["sweep"] = l.geometry.sweep;
      link["bulge"] = l.geometry.bulge;
    }
    links.push_back(std::move(link));
  }
  j["links"] = std::move(links);
  j["child_modules"] = m.diagram.child_modules;
  return j;
}

// Reader that reports the JSON pointer of whatever it fails on.
class Reader {
 public:
  Reader(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const ordered_json& at(const std::string& key) const {
    if (!j_.is_object() || !j_.contains(key)) throw ParseError("missing field", path_ + "/" + key);
    return j_.at(key);
  }
  Reader child(const std::string& key) const { return {at(key), path_ + "/" + key}; }
  Reader item(std::size_t i) const { return {j_.at(i), path_ + "/" + std::to_string(i)}; }
  std::size_t size() const { return j_.size(); }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  const std::string& path() const { return path_; }

  template <typename T>
  T get(const std::string& key) const {
    try {
      return at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), path_ + "/" + key);
    }
  }
  Reader array(const std::string& key) const {
    Reader r = child(key);
    if (!r.j_.is_array()) throw ParseError("expected an array", r.path_);
    return r;
  }
  Point point(const std::string& key) const {
    Reader r = array(key);
    if (r.size() != 2) throw ParseError("expected [x, y]", r.path_);
    try {
      return {r.j_.at(0).get<double>(), r.j_.at(1).get<double>()};
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), r.path_);
    }
  }
  Point as_point() const {
    if (!j_.is_array() || j_.size() != 2) throw ParseError("expected [x, y]", path_);
    try {
      return {j_.at(0).get<double>(), j_.at(1).get<double>()};
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), path_);
    }
  }
  Rect box() const {
    return {{get<double>("x"), get<double>("y")}, get<double>("half_width"), get<double>("half_height")};
  }
  const ordered_json& raw() const { return j_; }

 private:
  const ordered_json& j_;
  std::string path_;
};

ModuleRecord read_module(const Reader& r) {
  ModuleRecord m;
  m.id = r.get<int>("id");
  m.label = r.get<std::string>("label");
  if (!r.at("parent").is_null()) m.parent = r.get<int>("parent");
  m.children = r.get<std::vector<int>>("children");
  m.members = r.get<std::vector<std::string>>("members");
  m.irreducible = r.get<bool>("irreducible");
  if (!r.at("modularity").is_null()) m.modularity = r.get<double>("modularity");
  m.node_total = r.get<std::size_t>("node_total");

  Diagram& d = m.diagram;
  d.module_id = m.id;
  d.label = m.label;
  d.stress = r.get<double>("stress");
  d.stress_iterations = r.get<std::size_t>("stress_iterations");
  d.stress_converged = r.get<bool>("stress_converged");

  Reader nodes = r.array("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Reader n = nodes.item(i);
    d.nodes.push_back({n.get<std::string>("name"), n.box()});
  }
  Reader entities = r.array("entities");
  for (std::size_t i = 0; i < entities.size(); ++i) {
    Reader e = entities.item(i);
    Entity entity;
    entity.id = e.get<std::string>("id");
    try {
      entity.shape = parse_entity_shape(e.get<std::string>("shape"));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), e.path() + "/shape");
    }
    entity.label = e.get<std::string>("label");
    entity.box = e.box();
    if (e.has("pipe")) {
      Reader pipe = e.array("pipe");
      for (std::size_t k = 0; k < pipe.size(); ++k) entity.pipe.points.push_back(pipe.item(k).as_point());
    }
    d.entities.push_back(std::move(entity));
  }
  Reader links = r.array("links");
  for (std::size_t i = 0; i < links.size(); ++i) {
    Reader l = links.item(i);
    Link link;
    link.from = l.get<std::string>("from");
    link.to = l.get<std::string>("to");
    link.from_node = l.get<std::size_t>("from_node");
    link.to_node = l.get<std::size_t>("to_node");
    try {
      link.geometry.kind = parse_link_geometry(l.get<std::string>("kind"));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), l.path() + "/kind");
    }
    link.geometry.start = l.point("start");
    link.geometry.end = l.point("end");
    link.geometry.midpoint = l.point("midpoint");
    if (link.geometry.kind != LinkGeometry::straight) {
      link.geometry.center = l.point("center");
      link.geometry.radius = l.get<double>("radius");
      link.geometry.sweep = l.get<bool>("sweep");
      link.geometry.bulge = l.get<double>("bulge");
    }
    d.links.push_back(std::move(link));
  }
  d.child_modules = r.get<std::vector<int>>("child_modules");
  return m;
}

}  // namespace

std::string export_layout(const LayoutDocument& document) {
  ordered_json j;
  j["format_version"] = document.format_version;
  ordered_json modules = ordered_json::array();
  for (const auto& m : document.modules) modules.push_back(module_json(m));
  j["modules"] = std::move(modules);
  return j.dump(2) + "\n";
}

LayoutDocument import_layout(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  Reader root(j, "");
  LayoutDocument doc;
  doc.format_version = root.get<int>("format_version");
  if (doc.format_version != kLayoutFormatVersion)
    throw ParseError("unsupported format_version " + std::to_string(doc.format_version), "/format_version");
  Reader modules = root.array("modules");
  for (std::size_t i = 0; i < modules.size(); ++i) doc.modules.push_back(read_module(modules.item(i)));
  return doc;
}

}  // namespace sfdraw
