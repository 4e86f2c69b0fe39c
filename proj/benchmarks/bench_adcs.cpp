#include <benchmark/benchmark.h>

#include <random>

#include "gpsim/attitude.hpp"
#include "gpsim/control.hpp"
#include "gpsim/estimation.hpp"

using namespace gpsim;

namespace {

const InertiaSpec kInertia = InertiaSpec::diagonal(1200.0, 1500.0, 900.0);

void BM_StepAttitude(benchmark::State& state) {
  RigidBodyState s;
  s.omega = {1e-3, -2e-3, 5e-4};
  const WheelSpec wheels;
  for (auto _ : state) {
    s = step_attitude(s, kInertia, wheels, {1e-5, 0, 0}, {0, 1e-4, 0}, 0.1).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepAttitude);

void BM_EkfPredict(benchmark::State& state) {
  const SensorSuite suite;
  const Matrix6 q = process_noise(suite, 0.1);
  auto est = EstimatorState::initial({});
  for (auto _ : state) {
    est = ekf_predict(est, {1e-4, 2e-4, -1e-4}, 0.1, q);
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_EkfPredict);

// Predict plus the full 1 Hz measurement set.
void BM_EkfCycle(benchmark::State& state) {
  const SensorSuite suite;
  const Matrix6 q = process_noise(suite, 0.1);
  const ReferenceVectors refs{Vec3{1.0, 0.3, -0.2}.normalized(), Vec3{1e-7, -2e-7, 3.5e-7},
                              Vec3{-0.2, 0.9, 0.4}.normalized()};
  std::mt19937_64 rng(1);
  RigidBodyState truth;
  auto est = EstimatorState::initial(UnitQuaternion::from_axis_angle({1, 0, 0}, 0.01));
  for (auto _ : state) {
    est = ekf_predict(est, {}, 0.1, q);
    for (const auto& m : simulate_measurements(truth, suite, refs, rng)) est = ekf_update(est, m).state;
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_EkfCycle);

void BM_LqrSynthesis(benchmark::State& state) {
  LqrSpec spec;
  spec.inertia = kInertia;
  spec.Q.diagonal() << 10.0, 10.0, 10.0, 1e4, 1e4, 1e4;
  for (auto _ : state) benchmark::DoNotOptimize(lqr_gain(spec));
}
BENCHMARK(BM_LqrSynthesis)->Unit(benchmark::kMicrosecond);

}  // namespace
