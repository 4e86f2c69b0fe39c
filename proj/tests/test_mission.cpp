#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gpsim/error.hpp"
#include "gpsim/mission.hpp"

using namespace gpsim;

namespace {

Scenario insertion_only(std::uint64_t seed = 11) {
  Scenario s;
  s.seed = seed;
  s.adcs.enabled = false;
  s.stationkeeping.enabled = false;
  return s;
}

Scenario short_mission(std::uint64_t seed = 5) {
  Scenario s;
  s.seed = seed;
  s.adcs.duration_s = 600.0;
  s.stationkeeping.monitor_duration_s = 2.0 * 86400.0;
  return s;
}

bool changed_to(const AdcsSummary& a, const std::string& mode) {
  return std::any_of(a.mode_changes.begin(), a.mode_changes.end(), [&](const auto& c) {
    return c.second.rfind(mode, 0) == 0;
  });
}

}  // namespace

TEST(Mission, ZeroErrorsPassTheGateWithoutTrim) {
  Scenario s = insertion_only();
  s.insertion_errors.misalignment_sigma_deg = 0.0;
  s.insertion_errors.timing_sigma_s = 0.0;
  const auto res = run_mission(s);
  const auto& ins = res.report.insertion;
  EXPECT_TRUE(ins.gate.pass);
  EXPECT_FALSE(ins.trim_required);
  EXPECT_EQ(ins.trim_dv, 0.0);
  EXPECT_NEAR(ins.achieved.a, s.transfer.r2_m, 1.0);
  EXPECT_LT(ins.achieved.e, 1e-9);
  EXPECT_NEAR(ins.achieved.i, deg2rad(55.0), 1e-12);
  EXPECT_NEAR(ins.velocity_error.norm(), 0.0, 1e-6);
  EXPECT_TRUE(res.report.completed);
  ASSERT_EQ(res.telemetry.size(), 1u);
  EXPECT_EQ(res.telemetry[0].mode, "INSERTION");
  EXPECT_EQ(res.report.fuel_used_kg(), 0.0);
}

TEST(Mission, DefaultRunHasAllPhases) {
  const auto res = run_mission(short_mission());
  const auto& rep = res.report;
  EXPECT_TRUE(rep.completed);
  EXPECT_TRUE(rep.adcs.ran);
  EXPECT_TRUE(rep.stationkeeping.ran);
  EXPECT_EQ(res.telemetry.front().mode, "INSERTION");
  EXPECT_EQ(res.telemetry.back().mode, "STATIONKEEPING");
  EXPECT_EQ(rep.adcs.final_mode, "NOMINAL_POINTING");
  EXPECT_LT(rep.adcs.pointing_rms_deg, 0.1);
  EXPECT_GE(rep.fuel_final_kg, 0.0);
  EXPECT_LE(rep.fuel_final_kg, rep.fuel_initial_kg);
  const auto n_adcs = std::count_if(res.telemetry.begin(), res.telemetry.end(),
                                    [](const TelemetryRecord& r) { return r.mode == "NOMINAL_POINTING"; });
  EXPECT_EQ(n_adcs, 60);  // 600 s at a 10 s interval
}

TEST(Mission, EpochsStrictlyIncreaseAndValuesAreFinite) {
  const auto res = run_mission(short_mission(17));
  EXPECT_NO_THROW(check_telemetry(res.telemetry));
  for (std::size_t k = 1; k < res.telemetry.size(); ++k) {
    EXPECT_GT(res.telemetry[k].epoch, res.telemetry[k - 1].epoch);
  }
}

TEST(Mission, SameSeedGivesIdenticalTelemetryBytes) {
  const Scenario s = short_mission(123);
  const auto a = run_mission(s);
  const auto b = run_mission(s);
  EXPECT_EQ(telemetry_to_string(a.telemetry), telemetry_to_string(b.telemetry));
  EXPECT_EQ(telemetry_to_string(a.telemetry, TelemetryFormat::Json),
            telemetry_to_string(b.telemetry, TelemetryFormat::Json));
  EXPECT_EQ(a.telemetry, b.telemetry);

  Scenario other = s;
  other.seed = 124;
  EXPECT_NE(telemetry_to_string(run_mission(other).telemetry), telemetry_to_string(a.telemetry));
}

TEST(Mission, RunSeedKeepsTheBaseForRunZero) {
  EXPECT_EQ(run_seed(42, 0), 42u);
  EXPECT_NE(run_seed(42, 1), 42u);
  EXPECT_NE(run_seed(42, 1), run_seed(42, 2));
  EXPECT_NE(run_seed(42, 1), run_seed(43, 1));
}

TEST(Mission, SingleRunMonteCarloMatchesSingleMission) {
  const Scenario s = short_mission(77);
  const auto runs = monte_carlo_runs(s, 1, 1);
  ASSERT_EQ(runs.size(), 1u);
  const auto direct = run_mission(s).report;
  EXPECT_EQ(runs[0].report.seed, direct.seed);
  EXPECT_EQ(runs[0].report.insertion.achieved, direct.insertion.achieved);
  EXPECT_EQ(runs[0].report.adcs.pointing_rms_deg, direct.adcs.pointing_rms_deg);
  EXPECT_EQ(runs[0].report.fuel_final_kg, direct.fuel_final_kg);

  const auto sum = monte_carlo(s, 1, 1);
  EXPECT_EQ(sum.runs, 1);
  EXPECT_EQ(sum.gate_passes, direct.insertion.gate.pass ? 1 : 0);
  EXPECT_EQ(sum.gate_pass_stderr, 0.0);
}

TEST(Mission, ZeroSigmaMonteCarloAlwaysPasses) {
  Scenario s = insertion_only();
  s.insertion_errors.misalignment_sigma_deg = 0.0;
  s.insertion_errors.timing_sigma_s = 0.0;
  const auto sum = monte_carlo(s, 50, 2);
  EXPECT_EQ(sum.gate_passes, 50);
  EXPECT_EQ(sum.gate_pass_rate, 1.0);
  EXPECT_EQ(sum.gate_pass_stderr, 0.0);
  EXPECT_EQ(sum.trims_required, 0);
  EXPECT_EQ(sum.trim_dv_mps.count, 0);
}

TEST(Mission, StandardErrorFollowsBinomialFormula) {
  const Scenario s = insertion_only(2024);
  for (int n : {50, 200, 800}) {
    const auto sum = monte_carlo(s, n, 2);
    const double p = sum.gate_pass_rate;
    EXPECT_DOUBLE_EQ(p, static_cast<double>(sum.gate_passes) / n);
    EXPECT_NEAR(sum.gate_pass_stderr, std::sqrt(p * (1.0 - p) / n), 1e-15);
  }
  // quadrupling n halves the error for a rate away from 0 and 1
  const auto small = monte_carlo(s, 200, 2);
  const auto large = monte_carlo(s, 800, 2);
  ASSERT_GT(small.gate_pass_rate, 0.2);
  ASSERT_LT(small.gate_pass_rate, 0.98);
  EXPECT_NEAR(small.gate_pass_stderr / large.gate_pass_stderr, 2.0, 0.3);
}

TEST(Mission, FiveMpsVelocityErrorsFillTheTrimBand) {
  Scenario s = insertion_only(99);
  s.insertion_errors.misalignment_sigma_deg = 0.1;  // 5 m/s per axis
  const auto sum = monte_carlo(s, 200, 2);
  EXPECT_GT(sum.trims_required, 0);
  EXPECT_GT(sum.trim_band_fraction, 0.0);
  EXPECT_DOUBLE_EQ(sum.trim_band_fraction, sum.trims_in_band / 200.0);
  EXPECT_LE(sum.trim_dv_mps.p05, sum.trim_dv_mps.p50);
  EXPECT_LE(sum.trim_dv_mps.p50, sum.trim_dv_mps.p95);
  EXPECT_LE(sum.trim_dv_mps.p95, sum.trim_dv_mps.max);
}

TEST(Mission, SummaryIgnoresRunOrderAndThreadCount) {
  const Scenario s = insertion_only(31);
  auto runs = monte_carlo_runs(s, 64, 1);
  const auto base = summarize_runs(runs);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(runs.begin(), runs.end(), rng);
    EXPECT_EQ(summarize_runs(runs), base);
  }
  EXPECT_EQ(monte_carlo(s, 64, 1), base);
  EXPECT_EQ(monte_carlo(s, 64, 3), base);
  EXPECT_EQ(monte_carlo(s, 64, 8), base);
}

TEST(Mission, ParallelRunsMatchSerialRunsWithAdcs) {
  Scenario s = short_mission(8);
  s.adcs.duration_s = 200.0;
  s.stationkeeping.enabled = false;
  EXPECT_EQ(monte_carlo(s, 4, 1), monte_carlo(s, 4, 4));
}

TEST(Percentiles, InterpolatesLinearly) {
  const auto p = percentiles({4.0, 1.0, 3.0, 2.0, 5.0});
  EXPECT_DOUBLE_EQ(p.p50, 3.0);
  EXPECT_DOUBLE_EQ(p.p05, 1.2);
  EXPECT_DOUBLE_EQ(p.p95, 4.8);
  EXPECT_DOUBLE_EQ(p.max, 5.0);
  EXPECT_DOUBLE_EQ(p.mean, 3.0);
  EXPECT_EQ(p.count, 5);
  EXPECT_EQ(percentiles({}), Percentiles{});
}

TEST(Mission, DivergenceFaultEntersSafeHoldAndGroundResumes) {
  Scenario s = short_mission();
  s.stationkeeping.enabled = false;
  s.adcs.faults = {{100.0, "estimator_divergence"}};
  s.adcs.ground_commands = {{300.0, "resume_nominal"}};
  const auto res = run_mission(s);
  const auto& a = res.report.adcs;
  EXPECT_TRUE(changed_to(a, "SAFE_HOLD"));
  EXPECT_TRUE(changed_to(a, "NOMINAL_POINTING"));
  EXPECT_EQ(a.final_mode, "NOMINAL_POINTING");
  EXPECT_GT(a.thruster_fuel_kg, 0.0);
  bool hold_row = false;
  for (const auto& r : res.telemetry) {
    if (r.epoch > 100.0 && r.epoch < 300.0) hold_row = hold_row || r.mode == "SAFE_HOLD";
  }
  EXPECT_TRUE(hold_row);
}

TEST(Mission, SafeHoldPersistsWithoutGroundCommand) {
  Scenario s = short_mission();
  s.stationkeeping.enabled = false;
  s.adcs.faults = {{50.0, "wheel_fault"}};
  const auto res = run_mission(s);
  EXPECT_EQ(res.report.adcs.final_mode, "SAFE_HOLD");
  EXPECT_EQ(res.telemetry.back().mode, "SAFE_HOLD");
}

TEST(Mission, HugeInsertionErrorIsUnrecoverable) {
  Scenario s = short_mission(3);
  s.insertion_errors.misalignment_sigma_deg = 20.0;  // ~1 km/s per axis
  const auto res = run_mission(s);
  EXPECT_TRUE(res.report.insertion.unrecoverable);
  EXPECT_TRUE(res.report.has_event("out_of_range"));
  EXPECT_FALSE(res.report.completed);
  EXPECT_FALSE(res.report.adcs.ran);
  ASSERT_EQ(res.telemetry.size(), 1u);
  const auto& flags = res.telemetry[0].flags;
  EXPECT_NE(std::find(flags.begin(), flags.end(), "gate_unrecoverable"), flags.end());

  const auto sum = monte_carlo(s, 10, 2);
  EXPECT_GT(sum.unrecoverable, 0);
  EXPECT_GT(sum.error_tally.count("out_of_range"), 0u);
}

TEST(Mission, FuelDepletionIsReported) {
  Scenario s = short_mission(4);
  s.stationkeeping.propellant_kg = 0.5;
  const auto res = run_mission(s);
  EXPECT_TRUE(res.report.has_event("fuel_depleted"));
  EXPECT_TRUE(res.report.stationkeeping.lifetime.depleted);
  EXPECT_GE(res.report.fuel_final_kg, 0.0);
}

TEST(Mission, LaunchShortfallIsReported) {
  Scenario s = insertion_only();
  s.transfer.required_dv_mps = 1e5;
  const auto res = run_mission(s);
  EXPECT_TRUE(res.report.launch.shortfall);
  EXPECT_TRUE(res.report.has_event("budget_shortfall"));
}

TEST(Mission, StandalonePhasesRun) {
  Scenario s = short_mission();
  s.adcs.duration_s = 300.0;
  const auto a = run_adcs(s);
  EXPECT_TRUE(a.report.adcs.ran);
  EXPECT_FALSE(a.report.stationkeeping.ran);
  EXPECT_EQ(a.telemetry.size(), 30u);
  const auto k = run_stationkeeping(s);
  EXPECT_TRUE(k.report.stationkeeping.ran);
  EXPECT_FALSE(k.report.adcs.ran);
  EXPECT_NO_THROW(check_telemetry(k.telemetry));
}

TEST(Mission, InvalidScenarioIsRejected) {
  Scenario s = short_mission();
  s.adcs.dt_s = -1.0;
  EXPECT_THROW((void)run_mission(s), ScenarioError);
  EXPECT_THROW((void)monte_carlo(short_mission(), 0), DomainError);
}
