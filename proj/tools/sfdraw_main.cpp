#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sfdraw/errors.hpp"
#include "sfdraw/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitPipeline = 3;

void print_failure(std::string_view stage, const std::string& message) {
  std::cout << "status: error\nstage: " << stage << "\nerror: \"" << message << "\"\n";
  std::cerr << "sfdraw: " << message << "\n";
}

int report_error(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const sfdraw::ParseError& e) {
    print_failure("parse", e.what());
    return kExitValidation;
  } catch (const sfdraw::ModelError& e) {
    print_failure("validate", e.what());
    for (const auto& d : e.diagnostics()) std::cout << "  - " << sfdraw::to_string(d) << "\n";
    return kExitValidation;
  } catch (const sfdraw::PipelineError& e) {
    print_failure(e.stage(), e.what());
    const bool input_problem = e.stage() == "config" || e.stage() == "parse" || e.stage() == "validate";
    return input_problem ? kExitValidation : kExitPipeline;
  } catch (const std::exception& e) {
    print_failure("unknown", e.what());
    return kExitPipeline;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sfdraw::PipelineError("config", path, "cannot read file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw sfdraw::PipelineError("export", path, "cannot write file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lays out system dynamics models as stock-flow diagrams"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "model-json";
  std::string cluster = "cnm";
  std::size_t threshold = sfdraw::kDefaultThreshold;
  std::string overlap = "vpsc";
  std::uint64_t seed = 42;
  std::string hints;
  std::string out_dir;

  auto add_input_options = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Model file")->required();
    cmd->add_option("--format", format, "model-json or edge-list")
        ->check(CLI::IsMember({"model-json", "edge-list"}));
  };

  CLI::App* gen = app.add_subcommand("generate", "Run the full layout pipeline");
  add_input_options(gen);
  gen->add_option("--cluster", cluster, "cnm, gn, or none")->check(CLI::IsMember({"cnm", "gn", "none"}));
  gen->add_option("--threshold", threshold, "Cluster modules with at least this many layout nodes")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  gen->add_option("--overlap", overlap, "vpsc, voronoi, or none")
      ->check(CLI::IsMember({"vpsc", "voronoi", "none"}));
  gen->add_option("--seed", seed, "Seed of the initial placement");
  gen->add_option("--hints", hints, "Module hint file (label: id, id, ...)");
  gen->add_option("--out", out_dir, "Output directory")->required();

  std::string edges_out;
  std::string clusters_out;
  std::string clusters_in;
  CLI::App* comm = app.add_subcommand("communities", "Exchange edge-list and cluster files for the top level");
  add_input_options(comm);
  comm->add_option("--cluster", cluster, "cnm or gn")->check(CLI::IsMember({"cnm", "gn", "none"}));
  comm->add_option("--edges", edges_out, "Write the layout graph edge list here");
  comm->add_option("--clusters", clusters_out, "Write the computed partition here");
  comm->add_option("--read-clusters", clusters_in, "Score an externally computed cluster file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen) {
      sfdraw::RunConfig cfg;
      cfg.input = input;
      cfg.format = *sfdraw::parse_model_format(format);
      cfg.out_dir = out_dir;
      cfg.options.threshold = threshold;
      cfg.options.overlap = *sfdraw::parse_overlap_method(overlap);
      cfg.options.seed = seed;
      if (cluster == "none")
        cfg.options.cluster.reset();
      else
        cfg.options.cluster = cluster == "gn" ? sfdraw::ClusterAlgorithm::girvan_newman : sfdraw::ClusterAlgorithm::cnm;
      if (!hints.empty()) cfg.hints_path = hints;
      std::cout << sfdraw::format_report(sfdraw::run_pipeline(cfg));
      return kExitOk;
    }

    sfdraw::GenerateOptions options;
    options.cluster.reset();
    options.overlap = sfdraw::OverlapMethod::none;
    const auto result = sfdraw::generate(read_text(input), *sfdraw::parse_model_format(format), options);
    const auto graph = sfdraw::UndirectedGraph::from(result.layout.directed());
    std::cout << "status: ok\nlayout_nodes: " << result.layout.size() << "\nedges: " << graph.edge_count() << "\n";
    for (std::size_t i = 0; i < result.layout.size(); ++i)
      std::cout << (i == 0 ? "nodes:\n" : "") << "  " << i << ": \"" << result.layout.nodes[i].name << "\"\n";
    if (!edges_out.empty()) write_text(edges_out, sfdraw::write_edge_list(result.layout));
    if (!clusters_out.empty()) {
      if (graph.edge_count() == 0) throw sfdraw::PipelineError("modularize", "", "graph has no edges");
      const auto partition = cluster == "gn" ? sfdraw::girvan_newman_cluster(graph) : sfdraw::cnm_cluster(graph);
      write_text(clusters_out, sfdraw::write_communities(partition));
      std::printf("computed_modularity: %.6f\ncomputed_communities: %d\n", partition.modularity,
                  partition.community_count);
    }
    if (!clusters_in.empty()) {
      const auto partition = sfdraw::read_communities(read_text(clusters_in), graph);
      std::printf("read_modularity: %.6f\nread_communities: %d\n", partition.modularity, partition.community_count);
    }
    return kExitOk;
  } catch (...) {
    std::cout.flush();
    return report_error(std::current_exception());
  }
}
