#include <benchmark/benchmark.h>

#include <coopaloha/evolution.hpp>
#include <coopaloha/peak_search.hpp>
#include <coopaloha/walk_graph.hpp>

using namespace coopaloha;

namespace {

network_topology full(int m) {
  std::vector<std::uint64_t> counts((1U << m) - 1, 10000);
  return full_topology(m, counts);
}

std::vector<double> reference(int m) {
  static const std::vector<std::vector<double>> by_coverage{
      {3.10}, {1.81, 1.68}, {1.11, 0.94, 0.78}};
  const auto t = full(m);
  std::vector<double> g(t.num_groups());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = by_coverage[m - 1][t.coverage(i) - 1];
  return g;
}

void BM_evolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto t = full(m);
  const auto g = reference(m);
  const analyzer an(t, analysis_mode::coop, {});
  const auto slots = default_slot_range(t).max / 2;
  for (auto _ : state) benchmark::DoNotOptimize(an.evolve(g, slots).plr);
}
BENCHMARK(BM_evolve)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_evolve_noncoop(benchmark::State& state) {
  const auto t = full(3);
  const auto g = reference(3);
  const analyzer an(t, analysis_mode::noncoop, {});
  const auto slots = default_slot_range(t).max / 2;
  for (auto _ : state) benchmark::DoNotOptimize(an.evolve(g, slots).plr);
}
BENCHMARK(BM_evolve_noncoop)->Unit(benchmark::kMicrosecond);

void BM_find_peak(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto t = full(m);
  const auto g = reference(m);
  const analyzer an(t, analysis_mode::coop, {});
  for (auto _ : state) benchmark::DoNotOptimize(find_peak(an, g).throughput);
}
BENCHMARK(BM_find_peak)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_retrievability_tables(benchmark::State& state) {
  const auto t = full(3);
  for (auto _ : state) {
    const analyzer an(t, analysis_mode::coop, {});
    benchmark::DoNotOptimize(&an);
  }
}
BENCHMARK(BM_retrievability_tables)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
