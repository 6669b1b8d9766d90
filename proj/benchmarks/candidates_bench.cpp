#include <benchmark/benchmark.h>

#include "gamekg/scoring/candidates.hpp"
#include "gamekg/scoring/embedding.hpp"
#include "synthetic.hpp"

namespace {

using namespace gamekg;

void BM_IdentifyCandidates(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto graph = bench::synthetic_graph(n, n * 2);
  const scoring::HashedBagProvider provider;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scoring::identify_candidates(graph, provider, {0.2, 0.6}, 100));
  }
  state.counters["entities"] = static_cast<double>(graph.entities().size());
}
BENCHMARK(BM_IdentifyCandidates)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Embed(benchmark::State& state) {
  const scoring::HashedBagProvider provider;
  const std::string text = bench::synthetic_body(20, 10);
  for (auto _ : state) benchmark::DoNotOptimize(provider.embed(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Embed);

}  // namespace
