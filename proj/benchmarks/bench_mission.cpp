#include <benchmark/benchmark.h>

#include "gpsim/mission.hpp"

using namespace gpsim;

namespace {

void BM_MissionDefault(benchmark::State& state) {
  Scenario s;
  for (auto _ : state) {
    auto res = run_mission(s);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_MissionDefault)->Unit(benchmark::kMillisecond);

void BM_AdcsPhase(benchmark::State& state) {
  Scenario s;
  s.adcs.duration_s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_adcs(s));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_AdcsPhase)->Arg(600)->Arg(3600)->Unit(benchmark::kMillisecond);

void BM_InsertionMonteCarlo(benchmark::State& state) {
  Scenario s;
  s.adcs.enabled = false;
  s.stationkeeping.enabled = false;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(s, n, 1));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_InsertionMonteCarlo)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TelemetryCsv(benchmark::State& state) {
  const auto res = run_mission(Scenario{});
  for (auto _ : state) benchmark::DoNotOptimize(telemetry_to_string(res.telemetry));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(res.telemetry.size()));
}
BENCHMARK(BM_TelemetryCsv)->Unit(benchmark::kMillisecond);

}  // namespace
