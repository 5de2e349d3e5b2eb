#include "sfdraw/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>

#include "sfdraw/errors.hpp"
#include "sfdraw/svg.hpp"

namespace sfdraw {

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <typename F>
  auto run(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto record = [&] {
      std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
      sink_.push_back({stage, elapsed.count()});
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record();
    } else {
      auto value = f();
      record();
      return value;
    }
  }

 private:
  std::vector<StageTiming>& sink_;
};

// Any unexpected failure inside a stage surfaces as a stage-tagged error.
template <typename F>
auto tagged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const ModelError&) {
    throw;
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, "", e.what());
  }
}

GenerateResult run_stages(ModelGraph model, const GenerateOptions& options, std::vector<StageTiming> timings) {
  GenerateResult result;
  result.timings = std::move(timings);
  StageClock clock(result.timings);

  clock.run("validate", [&] {
    if (model.empty()) throw PipelineError("validate", "", "empty model");
    if (options.threshold < 2) throw PipelineError("validate", "threshold", "threshold must be at least 2");
    auto diagnostics = validate(model);
    if (!diagnostics.empty()) throw ModelError(std::move(diagnostics));
  });
  result.model = std::move(model);
  const ModelGraph& m = result.model;

  result.chains = clock.run("detect-chains", [&] { return tagged("detect-chains", [&] { return detect_main_chains(m); }); });
  clock.run("chain-layout", [&] {
    tagged("chain-layout", [&] {
      for (auto& chain : result.chains) chain = layout_main_chain(std::move(chain), m, options.geometry);
      return 0;
    });
  });
  result.layout = clock.run("redirect-edges", [&] {
    return tagged("redirect-edges", [&] {
      LayoutGraph lg = redirect_edges(m, result.chains);
      assign_node_sizes(lg, m, result.chains, options.geometry);
      return lg;
    });
  });
  result.tree = clock.run("modularize", [&] {
    std::vector<ModuleHint> hints;
    if (options.hints) hints = parse_hints(*options.hints, result.layout.size());
    return tagged("modularize", [&] {
      const std::size_t threshold = options.cluster ? options.threshold : std::numeric_limits<std::size_t>::max();
      return recursive_modularize(result.layout, threshold, options.cluster.value_or(ClusterAlgorithm::cnm), hints);
    });
  });

  LayoutOptions layout_options;
  layout_options.overlap = options.overlap;
  layout_options.seed = options.seed;
  layout_options.geometry = options.geometry;
  clock.run("layout", [&] {
    for (const Module& module : result.tree.modules) {
      result.diagrams.push_back(tagged("layout", [&] {
        return layout_module(result.tree, module.id, result.layout, m, result.chains, layout_options);
      }));
    }
  });
  return result;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("config", path.string(), "cannot read file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text, const std::string& stage) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw PipelineError(stage, path.string(), "cannot write file");
}

std::string fixed(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
  return buffer;
}

std::string quote_text(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

GenerateResult generate(std::string_view source, ModelFormat format, const GenerateOptions& options) {
  std::vector<StageTiming> timings;
  StageClock clock(timings);
  auto decls = clock.run("parse", [&] { return parse_declarations(source, format); });
  return run_stages(ModelGraph(std::move(decls)), options, std::move(timings));
}

GenerateResult generate(ModelGraph model, const GenerateOptions& options) {
  return run_stages(std::move(model), options, {});
}

RunReport make_report(const GenerateResult& result, const GenerateOptions& options) {
  RunReport report;
  report.variables = result.model.size();
  report.chains = result.chains.size();
  report.layout_nodes = result.layout.size();
  report.edges = result.layout.tally;
  report.cluster = !options.cluster ? "none" : *options.cluster == ClusterAlgorithm::cnm ? "cnm" : "gn";
  report.threshold = options.threshold;
  report.overlap = std::string(to_string(options.overlap));
  report.seed = options.seed;
  report.top_level_modules = result.tree.root().children.size();
  for (const Module& module : result.tree.modules) {
    const Diagram& d = result.diagrams.at(static_cast<std::size_t>(module.id));
    report.modules.push_back({module.id, module.label, module.parent, module.members.size(), module.children.size(),
                              module.node_total, module.irreducible, module.modularity, d.stress,
                              d.entities.size(), d.links.size(), svg_file_name(module.id, module.label)});
  }
  report.timings = result.timings;
  return report;
}

RunReport run_pipeline(const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  GenerateOptions options = cfg.options;
  if (cfg.hints_path) options.hints = read_file(*cfg.hints_path);
  const std::string source = read_file(cfg.input);

  GenerateResult result = generate(source, cfg.format, options);
  RunReport report = make_report(result, options);

  StageClock clock(report.timings);
  clock.run("render", [&] {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw PipelineError("render", cfg.out_dir.string(), ec.message());
    for (const auto& module : report.modules) {
      const Diagram& d = result.diagrams.at(static_cast<std::size_t>(module.id));
      write_file(cfg.out_dir / module.file, render_svg(d, options.geometry), "render");
    }
  });
  clock.run("export", [&] {
    const LayoutDocument doc = to_document(result.tree, result.layout, result.diagrams);
    write_file(cfg.out_dir / kLayoutFileName, export_layout(doc), "export");
  });
  report.layout_file = (cfg.out_dir / kLayoutFileName).string();
  std::chrono::duration<double, std::milli> total = std::chrono::steady_clock::now() - started;
  report.timings.push_back({"total", total.count()});
  return report;
}

std::string format_report(const RunReport& r) {
  std::string out;
  auto line = [&](const std::string& text) { out += text + "\n"; };
  line("status: ok");
  line("variables: " + std::to_string(r.variables));
  line("chains: " + std::to_string(r.chains));
  line("layout_nodes: " + std::to_string(r.layout_nodes));
  line("edges:");
  line("  kept: " + std::to_string(r.edges.kept));
  line("  internal_dropped: " + std::to_string(r.edges.internal_dropped));
  line("  collapsed: " + std::to_string(r.edges.collapsed));
  line("cluster: " + r.cluster);
  line("threshold: " + std::to_string(r.threshold));
  line("overlap: " + r.overlap);
  line("seed: " + std::to_string(r.seed));
  line("module_count: " + std::to_string(r.modules.size()));
  line("top_level_modules: " + std::to_string(r.top_level_modules));
  line("modules:");
  for (const auto& m : r.modules) {
    line("  - id: " + std::to_string(m.id));
    line("    label: " + quote_text(m.label));
    line("    parent: " + (m.parent ? std::to_string(*m.parent) : std::string("null")));
    line("    nodes: " + std::to_string(m.node_total));
    line("    direct_members: " + std::to_string(m.direct_members));
    line("    children: " + std::to_string(m.children));
    line("    irreducible: " + std::string(m.irreducible ? "true" : "false"));
    line("    modularity: " + (m.modularity ? fixed(*m.modularity, 6) : std::string("null")));
    line("    stress: " + fixed(m.stress, 6));
    line("    entities: " + std::to_string(m.entities));
    line("    links: " + std::to_string(m.links));
    line("    file: " + quote_text(m.file));
  }
  if (!r.layout_file.empty()) line("layout_file: " + quote_text(r.layout_file));
  line("timings_ms:");
  for (const auto& t : r.timings) line("  " + t.stage + ": " + fixed(t.milliseconds, 3));
  return out;
}

}  // namespace sfdraw
