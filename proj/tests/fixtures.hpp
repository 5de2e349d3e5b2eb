#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sfdraw/model.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(SFDRAW_FIXTURE_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Named {
  std::string file;
  sfdraw::ModelFormat format;
};

inline const std::vector<Named>& all() {
  static const std::vector<Named> list{
      {"world2.json", sfdraw::ModelFormat::model_json},     {"market_growth.json", sfdraw::ModelFormat::model_json},
      {"population.json", sfdraw::ModelFormat::model_json}, {"linear_chain.json", sfdraw::ModelFormat::model_json},
      {"branching_chain.json", sfdraw::ModelFormat::model_json}, {"causal_loops.txt", sfdraw::ModelFormat::edge_list},
  };
  return list;
}

inline sfdraw::ModelGraph load(const Named& f) { return sfdraw::parse_model(read(f.file), f.format); }

}  // namespace fixtures
