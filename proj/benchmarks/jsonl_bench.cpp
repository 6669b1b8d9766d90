#include <benchmark/benchmark.h>

#include "gamekg/kg/jsonl.hpp"
#include "synthetic.hpp"

namespace {

using namespace gamekg;

void BM_WriteJsonl(benchmark::State& state) {
  const auto graph = bench::synthetic_graph(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::size_t>(state.range(0)) * 2);
  for (auto _ : state) benchmark::DoNotOptimize(kg::to_jsonl(graph));
}
BENCHMARK(BM_WriteJsonl)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ReadJsonl(benchmark::State& state) {
  const std::string text = kg::to_jsonl(bench::synthetic_graph(
      static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)) * 2));
  for (auto _ : state) benchmark::DoNotOptimize(kg::from_jsonl(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ReadJsonl)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
