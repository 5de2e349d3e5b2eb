#include <benchmark/benchmark.h>

#include <random>

#include "sfdraw/community.hpp"
#include "sfdraw/overlap.hpp"
#include "sfdraw/stress.hpp"

using namespace sfdraw;

namespace {

std::vector<Edge> random_edges(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({static_cast<NodeId>(rng() % v), v});
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (coin(rng) < p) edges.push_back({a, b});
  return edges;
}

std::vector<SizedNode> random_boxes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double spread = 20.0 * std::sqrt(static_cast<double>(n));
  std::uniform_real_distribution<double> pos(0.0, spread);
  std::uniform_real_distribution<double> half(5.0, 25.0);
  std::vector<SizedNode> nodes(n);
  for (auto& node : nodes) node = {{pos(rng), pos(rng)}, half(rng), half(rng)};
  return nodes;
}

void BM_Stress(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StressModel model = build_stress_model(DirectedGraph(n, random_edges(n, 3.0 / static_cast<double>(n), 1)), 180.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_stress(model, 42));
}
BENCHMARK(BM_Stress)->Arg(25)->Arg(75)->Arg(150);

void BM_Cnm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UndirectedGraph g(n, random_edges(n, 3.0 / static_cast<double>(n), 2));
  for (auto _ : state) benchmark::DoNotOptimize(cnm_cluster(g));
}
BENCHMARK(BM_Cnm)->Arg(75)->Arg(300)->Arg(1000);

void BM_GirvanNewman(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UndirectedGraph g(n, random_edges(n, 3.0 / static_cast<double>(n), 3));
  for (auto _ : state) benchmark::DoNotOptimize(girvan_newman_cluster(g));
}
BENCHMARK(BM_GirvanNewman)->Arg(30)->Arg(75);

void BM_Vpsc(benchmark::State& state) {
  const auto nodes = random_boxes(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(remove_overlaps_vpsc(nodes));
}
BENCHMARK(BM_Vpsc)->Arg(50)->Arg(200);

void BM_Voronoi(benchmark::State& state) {
  const auto nodes = random_boxes(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(remove_overlaps_voronoi(nodes));
}
BENCHMARK(BM_Voronoi)->Arg(50)->Arg(200);

}  // namespace
