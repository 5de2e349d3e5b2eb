#include "sfdraw/svg.hpp"

#include <cctype>
#include <cstdio>
#include <string>

namespace sfdraw {

namespace {

std::string num(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  std::string s(buffer);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xy(Point p) { return num(p.x) + " " + num(p.y); }

std::string points_attr(const FlowPolyline& pipe) {
  std::string out;
  for (std::size_t i = 0; i < pipe.points.size(); ++i) {
    if (i) out += ' ';
    out += num(pipe.points[i].x) + "," + num(pipe.points[i].y);
  }
  return out;
}

void text(std::string& out, Point at, std::string_view value, const Geometry& geometry) {
  out += "  <text x=\"" + num(at.x) + "\" y=\"" + num(at.y) + "\" font-size=\"" + num(geometry.font_size) +
         "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + xml_escape(value) + "</text>\n";
}

void label_below(std::string& out, const Entity& e, const Geometry& geometry) {
  text(out, label_box(e.box, e.label, geometry).center, e.label, geometry);
}

void draw_entity(std::string& out, const Entity& e, const Geometry& geometry) {
  const Rect& b = e.box;
  switch (e.shape) {
    case EntityShape::stock:
      out += "  <rect class=\"stock\" x=\"" + num(b.left()) + "\" y=\"" + num(b.top()) + "\" width=\"" +
             num(b.width()) + "\" height=\"" + num(b.height()) + "\" fill=\"white\" stroke=\"black\"/>\n";
      label_below(out, e, geometry);
      break;
    case EntityShape::flow: {
      // Double-line pipe: a wide dark stroke with a narrower light core.
      const std::string pts = points_attr(e.pipe);
      out += "  <polyline class=\"pipe\" points=\"" + pts +
             "\" fill=\"none\" stroke=\"black\" stroke-width=\"5\" marker-end=\"url(#pipe-head)\"/>\n";
      out += "  <polyline class=\"pipe-core\" points=\"" + pts +
             "\" fill=\"none\" stroke=\"white\" stroke-width=\"2.5\"/>\n";
      const double r = b.half_width;
      const Point c = b.center;
      out += "  <polygon class=\"valve\" points=\"" + num(c.x - r) + "," + num(c.y - r) + " " + num(c.x + r) +
             "," + num(c.y + r) + " " + num(c.x + r) + "," + num(c.y - r) + " " + num(c.x - r) + "," +
             num(c.y + r) + "\" fill=\"white\" stroke=\"black\"/>\n";
      label_below(out, e, geometry);
      break;
    }
    case EntityShape::auxiliary:
      out += "  <circle class=\"auxiliary\" cx=\"" + num(b.center.x) + "\" cy=\"" + num(b.center.y) + "\" r=\"" +
             num(b.half_width) + "\" fill=\"white\" stroke=\"black\"/>\n";
      label_below(out, e, geometry);
      break;
    case EntityShape::module:
      out += "  <rect class=\"module\" x=\"" + num(b.left()) + "\" y=\"" + num(b.top()) + "\" width=\"" +
             num(b.width()) + "\" height=\"" + num(b.height()) +
             "\" rx=\"8\" ry=\"8\" fill=\"#eef3fb\" stroke=\"#34568b\"/>\n";
      text(out, b.center, e.label, geometry);
      break;
    case EntityShape::cloud:
      out += "  <ellipse class=\"cloud\" cx=\"" + num(b.center.x) + "\" cy=\"" + num(b.center.y) + "\" rx=\"" +
             num(b.half_width) + "\" ry=\"" + num(b.half_height) + "\" fill=\"white\" stroke=\"gray\"/>\n";
      break;
  }
}

void draw_link(std::string& out, const Link& link) {
  const ArcSpec& g = link.geometry;
  std::string d = "M " + xy(g.start);
  if (g.kind == LinkGeometry::straight) {
    d += " L " + xy(g.end);
  } else {
    d += " A " + num(g.radius) + " " + num(g.radius) + " 0 0 " + (g.sweep ? "1 " : "0 ") + xy(g.end);
  }
  out += "  <path class=\"link " + std::string(to_string(g.kind)) + "\" data-from=\"" + xml_escape(link.from) +
         "\" data-to=\"" + xml_escape(link.to) + "\" d=\"" + d +
         "\" fill=\"none\" stroke=\"#444\" marker-end=\"url(#arrow)\"/>\n";
}

}  // namespace

std::string xml_escape(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char ch : value) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string svg_file_name(int module_id, std::string_view label) {
  std::string safe;
  for (char ch : label) {
    const auto u = static_cast<unsigned char>(ch);
    safe += (std::isalnum(u) || ch == '_' || ch == '-') ? ch : '_';
  }
  return "module_" + std::to_string(module_id) + "_" + safe + ".svg";
}

std::string render_svg(const Diagram& diagram, const Geometry& geometry) {
  Rect frame = diagram.bounds();
  for (const auto& e : diagram.entities)
    if (!e.label.empty() && e.shape != EntityShape::module) frame = unite(frame, label_box(e.box, e.label, geometry));
  frame.half_width += geometry.margin;
  frame.half_height += geometry.margin;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(frame.width()) +
         "\" height=\"" + num(frame.height()) + "\" viewBox=\"" + num(frame.left()) + " " + num(frame.top()) + " " +
         num(frame.width()) + " " + num(frame.height()) + "\">\n";
  out += "  <title>" + xml_escape(diagram.label) + "</title>\n";
  out += "  <defs>\n";
  out += "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#444\"/></marker>\n";
  out += "    <marker id=\"pipe-head\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"3\" "
         "markerHeight=\"3\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/></marker>\n";
  out += "  </defs>\n";
  for (const auto& e : diagram.entities) draw_entity(out, e, geometry);
  for (const auto& link : diagram.links) draw_link(out, link);
  out += "</svg>\n";
  return out;
}

}  // namespace sfdraw
