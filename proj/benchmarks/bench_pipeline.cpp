#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "sfdraw/pipeline.hpp"

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SFDRAW_FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream b;
  b << in.rdbuf();
  return b.str();
}

void BM_World2(benchmark::State& state) {
  const std::string source = fixture("world2.json");
  sfdraw::GenerateOptions options;
  options.overlap = state.range(0) == 0 ? sfdraw::OverlapMethod::vpsc : sfdraw::OverlapMethod::voronoi;
  for (auto _ : state) benchmark::DoNotOptimize(sfdraw::generate(source, sfdraw::ModelFormat::model_json, options));
}
BENCHMARK(BM_World2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
