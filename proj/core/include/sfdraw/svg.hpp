#pragma once

#include <string>
#include <string_view>

#include "sfdraw/diagram.hpp"
#include "sfdraw/geometry.hpp"

namespace sfdraw {

// Standalone SVG 1.1 document. Entities are drawn in id order, then links in
// (from, to) order; coordinates are printed with two decimals.
std::string render_svg(const Diagram& diagram, const Geometry& geometry = {});

// `module_<id>_<label>.svg` with every character outside [A-Za-z0-9_-]
// replaced by '_'.
std::string svg_file_name(int module_id, std::string_view label);

std::string xml_escape(std::string_view text);

}  // namespace sfdraw
