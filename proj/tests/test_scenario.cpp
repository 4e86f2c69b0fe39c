#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gpsim/error.hpp"
#include "gpsim/scenario.hpp"

using namespace gpsim;

namespace {

// Expects parse_scenario(text) to fail and returns the reported field path.
std::string failing_field(const std::string& text) {
  try {
    (void)parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.field();
  }
  ADD_FAILURE() << "scenario was accepted: " << text;
  return {};
}

}  // namespace

TEST(Scenario, MinimalFileTakesDefaults) {
  const Scenario s = parse_scenario(R"({"seed": 7})");
  Scenario expected;
  expected.seed = 7;
  EXPECT_EQ(s, expected);
  EXPECT_EQ(s.transfer.r2_m, 26560e3);
  EXPECT_EQ(s.adcs.dt_s, 0.1);
  EXPECT_EQ(s.adcs.duration_s, 7200.0);
  EXPECT_EQ(s.tolerances.inc_deg, 0.1);
  EXPECT_EQ(s.stationkeeping.propellant_kg, 50.0);
  EXPECT_EQ(s.constellation.num_planes, 6);
  EXPECT_EQ(parse_scenario("{}").seed, 1u);
}

TEST(Scenario, NestedOverridesKeepSiblingDefaults) {
  const Scenario s = parse_scenario(R"({"adcs": {"controller": "lqr", "gains": {"kp": [1, 2, 3]}}})");
  EXPECT_EQ(s.adcs.controller, ControllerKind::Lqr);
  EXPECT_EQ(s.adcs.gains.kp, (Vec3{1, 2, 3}));
  EXPECT_EQ(s.adcs.gains.kd, AdcsConfig{}.gains.kd);
}

TEST(Scenario, NegativeInertiaNamesTheField) {
  EXPECT_EQ(failing_field(R"({"adcs": {"inertia_kgm2": [[-1200, 0, 0], [0, 1500, 0], [0, 0, 900]]}})"),
            "adcs.inertia_kgm2");
}

TEST(Scenario, InvariantViolationsNameTheirFields) {
  EXPECT_EQ(failing_field(R"({"adcs": {"dt_s": 0}})"), "adcs.dt_s");
  EXPECT_EQ(failing_field(R"({"tolerances": {"ecc_max": -1}})"), "tolerances");
  EXPECT_EQ(failing_field(R"({"transfer": {"stages": [{"isp_s": 300, "m0_kg": 1, "mf_kg": 2}]}})"),
            "transfer.stages[0].m0_kg");
  EXPECT_EQ(failing_field(R"({"adcs": {"faults": [{"epoch_s": 5, "type": "meteor"}]}})"),
            "adcs.faults[0].type");
  EXPECT_EQ(failing_field(R"({"constellation": {"num_planes": 0}})"), "constellation");
  EXPECT_EQ(failing_field(R"({"stationkeeping": {"propellant_kg": -5}})"), "stationkeeping");
}

TEST(Scenario, RejectsUnknownKeysAndWrongTypes) {
  EXPECT_EQ(failing_field(R"({"sede": 3})"), "sede");
  EXPECT_EQ(failing_field(R"({"adcs": {"wheels": {"max_torque": 1}}})"), "adcs.wheels.max_torque");
  EXPECT_EQ(failing_field(R"({"adcs": {"dt_s": "fast"}})"), "adcs.dt_s");
  EXPECT_EQ(failing_field(R"({"adcs": {"sun_direction": [1, 0]}})"), "adcs.sun_direction");
  EXPECT_EQ(failing_field(R"({"seed": -4})"), "seed");
  EXPECT_EQ(failing_field(R"({"adcs": {"controller": "bang-bang"}})"), "adcs.controller");
  EXPECT_EQ(failing_field(R"([1, 2])"), "");
}

TEST(Scenario, SyntaxErrorReportsLineAndColumn) {
  try {
    (void)parse_scenario("{\n  \"seed\": 3,\n  \"adcs\": {\"dt_s\": 0.1,}\n}");
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
    EXPECT_TRUE(e.field().empty());
  }
}

TEST(Scenario, CanonicalRoundTripIsIdentity) {
  Scenario s;
  s.seed = 0xfeedfacecafebeefULL;
  s.adcs.controller = ControllerKind::Pid;
  s.adcs.gains.ki = {0.001, 0.002, 0.003};
  s.adcs.faults = {{120.5, "wheel_fault"}};
  s.adcs.ground_commands = {{600.0, "resume_nominal"}};
  s.adcs.inertia_kgm2(0, 1) = s.adcs.inertia_kgm2(1, 0) = 12.25;
  s.constellation.raan_spacing_deg = 45.0;
  s.constellation.duration_s = 3600.0;
  s.insertion_errors.timing_sigma_s = 0.1 + 0.2;  // not exactly representable in decimal
  s.transfer.stages.pop_back();

  const std::string text = dump_scenario(s);
  const Scenario back = parse_scenario(text);
  EXPECT_EQ(back, s);
  EXPECT_EQ(dump_scenario(back), text);
}

TEST(Scenario, SaveAndLoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "gpsim_scenario_roundtrip.json";
  Scenario s;
  s.seed = 99;
  s.stationkeeping.enabled = false;
  save_scenario(s, path.string());
  EXPECT_EQ(load_scenario(path.string()), s);
  std::filesystem::remove(path);
  EXPECT_THROW((void)load_scenario(path.string()), ScenarioError);
}

TEST(Scenario, BundledExampleLoads) {
  const Scenario s = load_scenario(GPSIM_EXAMPLE_SCENARIO);
  EXPECT_NO_THROW(s.validate());
  EXPECT_TRUE(s.adcs.enabled);
}

TEST(Scenario, ConversionsUseModuleUnits) {
  const Scenario s;
  EXPECT_NEAR(s.tolerances.to_tolerances().inc_tol, 0.1 * kDeg, 1e-18);
  EXPECT_NEAR(s.adcs.sensors.to_suite().sun_sensor_sigma, 0.5 * kDeg, 1e-18);
  EXPECT_NEAR(s.adcs.supervisor.to_config().rate_limit, 2.0 * kDeg, 1e-18);
  EXPECT_EQ(s.constellation.to_spec(), ConstellationSpec{});
  EXPECT_EQ(s.stationkeeping.to_budget(), FuelBudget{});
  EXPECT_EQ(s.stationkeeping.perturbations.to_config(), PerturbationConfig{});
}
