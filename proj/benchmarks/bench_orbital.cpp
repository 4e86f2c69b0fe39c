#include <benchmark/benchmark.h>

#include "gpsim/constellation.hpp"
#include "gpsim/orbital.hpp"
#include "gpsim/transfer.hpp"

using namespace gpsim;

namespace {

const KeplerianElements kMeo{26560e3, 0.01, 55.0 * kDeg, 0.5, 0.3, 0.1};

void BM_ElementsRoundTrip(benchmark::State& state) {
  for (auto _ : state) {
    const auto sv = elements_to_state(kMeo);
    benchmark::DoNotOptimize(state_to_elements(sv));
  }
}
BENCHMARK(BM_ElementsRoundTrip);

void BM_KeplerAdvance(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 37.0;
    benchmark::DoNotOptimize(advance_kepler(kMeo, t));
  }
}
BENCHMARK(BM_KeplerAdvance);

// One orbit of RK4 at 10 s; arg 1 switches on J2 + SRP + lunisolar.
void BM_PropagateOrbit(benchmark::State& state) {
  const auto cfg = state.range(0) ? PerturbationConfig{} : PerturbationConfig::none();
  const auto sv0 = elements_to_state(kMeo);
  const double period = orbital_period(kMeo.a);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(sv0, period, 10.0, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(period / 10.0));
}
BENCHMARK(BM_PropagateOrbit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HohmannPlan(benchmark::State& state) {
  double r2 = 26560e3;
  for (auto _ : state) {
    r2 += 1.0;
    benchmark::DoNotOptimize(hohmann_plan(6578e3, r2));
  }
}
BENCHMARK(BM_HohmannPlan);

void BM_CoverageSweep(benchmark::State& state) {
  const ConstellationSpec spec;
  const double grid = state.range(0) * kDeg;
  const CoverageGrid g{grid, grid, 5.0 * kDeg};
  const double period = orbital_period(spec.semi_major_axis);
  for (auto _ : state) benchmark::DoNotOptimize(coverage_sweep(spec, g, period, 60.0, {}, 1));
}
BENCHMARK(BM_CoverageSweep)->Arg(30)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
