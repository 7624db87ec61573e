#include <benchmark/benchmark.h>

#include "ddosfc/analytics.hpp"
#include "ddosfc/ingest.hpp"
#include "ddosfc/preprocess.hpp"

using namespace ddosfc;

namespace {

std::vector<AttackRecord> records(std::size_t n) {
  SyntheticSpec spec;
  spec.record_count = n;
  return generate_synthetic(spec);
}

void BM_ParseNdjson(benchmark::State& state) {
  const std::string text = to_ndjson(records(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(parse_records(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseNdjson)->Arg(10000);

void BM_Aggregate(benchmark::State& state) {
  const auto enriched = enrich_all(records(static_cast<std::size_t>(state.range(0))));
  const auto g = static_cast<Granularity>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(enriched, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Aggregate)->Args({100000, 0})->Args({100000, 1})->Args({100000, 3});

void BM_Histograms(benchmark::State& state) {
  const auto enriched = enrich_all(records(100000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(histogram_duration(enriched, true));
    benchmark::DoNotOptimize(histogram_throughput(enriched, true));
  }
}
BENCHMARK(BM_Histograms);

}  // namespace
BENCHMARK_MAIN();
