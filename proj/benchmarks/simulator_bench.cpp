#include <benchmark/benchmark.h>

#include <coopaloha/monte_carlo.hpp>
#include <coopaloha/simulator.hpp>

using namespace coopaloha;

namespace {

void BM_frameless_frame(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const network_topology t(2, {{0b01, n}, {0b10, n}, {0b11, n}});
  const std::vector<double> g{1.81, 1.81, 1.68};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_frame(t, g, 0.8, ++seed).slots);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 3 * n));
}
BENCHMARK(BM_frameless_frame)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_spatio_temporal_frame(benchmark::State& state) {
  const network_topology t(3, {{0b001, 2000}, {0b010, 2000}, {0b100, 2000}, {0b011, 1500}, {0b111, 6000}});
  const auto lambda = parse_replica_distribution("2:1");
  const auto slots = slots_for_load(t, 0.6);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_spatio_temporal(t, lambda, slots, ++seed).retrieved);
}
BENCHMARK(BM_spatio_temporal_frame)->Unit(benchmark::kMillisecond);

void BM_monte_carlo(benchmark::State& state) {
  const network_topology t(2, {{0b01, 10000}, {0b10, 10000}, {0b11, 10000}});
  simulation_spec spec(t, frame_kind::frameless, {1.81, 1.81, 1.68});
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(spec, 16, 1, workers).throughput.mean);
}
BENCHMARK(BM_monte_carlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
