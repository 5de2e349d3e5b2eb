#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfdraw/assemble.hpp"
#include "sfdraw/community.hpp"
#include "sfdraw/diagram.hpp"
#include "sfdraw/layout_export.hpp"
#include "sfdraw/mainchain.hpp"
#include "sfdraw/model.hpp"

namespace sfdraw {

inline constexpr std::size_t kDefaultThreshold = 75;

struct GenerateOptions {
  std::optional<ClusterAlgorithm> cluster = ClusterAlgorithm::cnm;  // nullopt: no clustering
  std::size_t threshold = kDefaultThreshold;
  OverlapMethod overlap = OverlapMethod::vpsc;
  std::uint64_t seed = 42;
  Geometry geometry;
  std::optional<std::string> hints;  // hint file contents
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct GenerateResult {
  ModelGraph model;
  std::vector<MainChain> chains;
  LayoutGraph layout;
  ModuleTree tree;
  std::vector<Diagram> diagrams;  // indexed by module id
  std::vector<StageTiming> timings;
};

// Stages in order: parse, validate, detect-chains, chain-layout,
// redirect-edges, modularize, layout (stress, overlap removal, curving, and
// reassembly per module). Throws ParseError or ModelError for bad input,
// PipelineError tagged with the failing stage otherwise.
GenerateResult generate(std::string_view source, ModelFormat format, const GenerateOptions& options = {});
GenerateResult generate(ModelGraph model, const GenerateOptions& options = {});

struct RunConfig {
  std::filesystem::path input;
  ModelFormat format = ModelFormat::model_json;
  GenerateOptions options;
  std::optional<std::filesystem::path> hints_path;
  std::filesystem::path out_dir;
};

struct ModuleReport {
  int id = 0;
  std::string label;
  std::optional<int> parent;
  std::size_t direct_members = 0;
  std::size_t children = 0;
  std::size_t node_total = 0;
  bool irreducible = false;
  std::optional<double> modularity;
  double stress = 0.0;
  std::size_t entities = 0;
  std::size_t links = 0;
  std::string file;
};

struct RunReport {
  std::size_t variables = 0;
  std::size_t chains = 0;
  std::size_t layout_nodes = 0;
  EdgeTally edges;
  std::string cluster;
  std::size_t threshold = 0;
  std::string overlap;
  std::uint64_t seed = 0;
  std::size_t top_level_modules = 0;
  std::vector<ModuleReport> modules;
  std::vector<StageTiming> timings;
  std::string layout_file;
};

inline constexpr std::string_view kLayoutFileName = "layout.json";

RunReport make_report(const GenerateResult& result, const GenerateOptions& options);

// generate() plus the render and export stages: one SVG per module and the
// layout document, written under cfg.out_dir.
RunReport run_pipeline(const RunConfig& cfg);

// Indented `key: value` text.
std::string format_report(const RunReport& report);

}  // namespace sfdraw
