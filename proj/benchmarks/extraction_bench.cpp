#include <benchmark/benchmark.h>

#include "gamekg/ingest/builder.hpp"
#include "gamekg/ingest/extractor.hpp"
#include "gamekg/ingest/sentences.hpp"
#include "synthetic.hpp"

namespace {

using namespace gamekg;

void BM_SplitSentences(benchmark::State& state) {
  const std::string body = bench::synthetic_body(50, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ingest::split_sentences(body));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * body.size()));
}
BENCHMARK(BM_SplitSentences)->Arg(100)->Arg(1000);

void BM_ExtractDocument(benchmark::State& state) {
  const kg::Document doc{"d", "D", bench::synthetic_body(50, static_cast<std::size_t>(state.range(0))),
                         std::nullopt};
  const ingest::RuleBasedExtractor extractor;
  for (auto _ : state) benchmark::DoNotOptimize(ingest::extract_document(doc, extractor));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.body.size()));
}
BENCHMARK(BM_ExtractDocument)->Arg(100)->Arg(1000);

}  // namespace
