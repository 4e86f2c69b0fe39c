#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpsim/attitude.hpp"
#include "gpsim/constellation.hpp"
#include "gpsim/control.hpp"
#include "gpsim/estimation.hpp"
#include "gpsim/orbital.hpp"
#include "gpsim/stationkeeping.hpp"
#include "gpsim/transfer.hpp"

namespace gpsim {

// Scenario values are kept in the units used by the file (degrees where the
// key says _deg) so that save/load is exact. The to_*() helpers convert to
// the module types.

struct TransferConfig {
  double r1_m = 6578e3;
  double r2_m = 26560e3;
  double target_inclination_deg = 55.0;
  double gravity_loss_mps = kDefaultGravityLoss;
  double required_dv_mps = kDefaultRequiredInsertionDv;
  std::vector<StageSpec> stages{{"first", 290.0, 300000.0, 100000.0},
                                {"second", 348.0, 60000.0, 12000.0},
                                {"upper", 320.0, 8000.0, 2500.0}};
  friend bool operator==(const TransferConfig&, const TransferConfig&) = default;
};

/// Per-channel Gaussian insertion errors. A thrust misalignment of
/// alpha degrees becomes a velocity error of alpha * velocity_error_per_deg
/// on the radial and cross-track axes (0.1 deg <-> 5 m/s). Timing errors
/// shift the circularization burn along the transfer orbit.
struct InsertionErrorConfig {
  double misalignment_sigma_deg = 0.1;
  double velocity_error_per_deg_mps = 50.0;
  double timing_sigma_s = 10.0;
  friend bool operator==(const InsertionErrorConfig&, const InsertionErrorConfig&) = default;
};

struct ToleranceConfig {
  double sma_m = 1000.0;
  double ecc_max = 0.005;
  double inc_deg = 0.1;
  InsertionTolerances to_tolerances() const;
  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct TrimConfig {
  double band_low_mps = 10.0;
  double band_high_mps = 20.0;
  double linear_factor = 10.0;
  friend bool operator==(const TrimConfig&, const TrimConfig&) = default;
};

enum class ControllerKind { Pd, Pid, Lqr };
const char* to_string(ControllerKind kind);

struct LqrWeights {
  Vec3 q_attitude{10.0, 10.0, 10.0};
  Vec3 q_rate{1e4, 1e4, 1e4};
  Vec3 r{1.0, 1.0, 1.0};
  friend bool operator==(const LqrWeights&, const LqrWeights&) = default;
};

struct SafeHoldConfig {
  double kp = 2.0;
  double kd = 40.0;
  double max_torque_nm = 2.0;
  double thruster_lever_arm_m = 1.0;
  double thruster_isp_s = 220.0;
  friend bool operator==(const SafeHoldConfig&, const SafeHoldConfig&) = default;
};

struct SupervisorSettings {
  double rate_limit_deg_s = 2.0;
  double dump_enter_fraction = 0.8;
  double dump_exit_fraction = 0.2;
  double divergence_sigma_deg = 1.0;  // attitude 1-sigma that counts as lost knowledge
  int divergence_rejections = 10;     // consecutive rejected star-tracker updates
  SupervisorConfig to_config() const;
  friend bool operator==(const SupervisorSettings&, const SupervisorSettings&) = default;
};

struct SensorConfig {
  double star_tracker_sigma_rad = 4.848e-6;
  double gyro_noise_sigma_rad_s = 1e-6;
  double gyro_bias_walk_sigma = 1e-9;
  Vec3 gyro_initial_bias_rad_s{2e-6, -3e-6, 1.5e-6};
  double sun_sensor_sigma_deg = 0.5;
  double earth_sensor_sigma_deg = 0.5;
  double magnetometer_sigma_t = 5e-9;
  double star_tracker_rate_hz = 1.0;
  double gyro_rate_hz = 10.0;
  double sun_sensor_rate_hz = 1.0;
  double earth_sensor_rate_hz = 1.0;
  double magnetometer_rate_hz = 1.0;
  SensorSuite to_suite() const;
  friend bool operator==(const SensorConfig&, const SensorConfig&) = default;
};

/// Scheduled anomaly ("wheel_fault" or "estimator_divergence") or ground
/// command ("resume_nominal"), at seconds after ADCS start.
struct TimedEvent {
  double epoch_s = 0.0;
  std::string type;
  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

struct AdcsConfig {
  bool enabled = true;
  double dt_s = 0.1;
  double duration_s = 7200.0;
  double telemetry_interval_s = 10.0;
  Mat3 inertia_kgm2 = Mat3::diagonal(1200.0, 1500.0, 900.0);
  ControllerKind controller = ControllerKind::Pd;
  PidGains gains{{3.0, 3.75, 2.25}, {0.0, 0.0, 0.0}, {120.0, 150.0, 90.0}, 0.1};
  LqrWeights lqr;
  WheelSpec wheels;
  MagnetorquerSpec magnetorquers;
  double dump_gain = 1.5e-4;  // 1/s
  SafeHoldConfig safe_hold;
  SupervisorSettings supervisor;
  SensorConfig sensors;
  double initial_pointing_error_deg = 5.0;
  double initial_knowledge_error_deg = 2.0;
  Vec3 initial_rate_deg_s{0.0, 0.0, 0.0};
  Vec3 disturbance_torque_nm{1e-5, -5e-6, 2e-6};
  Vec3 sun_direction{0.0, -0.6, 0.8};  // well off the default orbit plane
  std::vector<TimedEvent> faults;
  std::vector<TimedEvent> ground_commands;
  friend bool operator==(const AdcsConfig&, const AdcsConfig&) = default;
};

struct PerturbationSettings {
  bool j2 = true;
  double srp_accel_mps2 = 1e-7;
  double lunisolar_accel_mps2 = 1e-6;
  PerturbationConfig to_config() const;
  friend bool operator==(const PerturbationSettings&, const PerturbationSettings&) = default;
};

struct StationkeepingConfig {
  bool enabled = true;
  double window_halfwidth_deg = 2.0;
  double inclination_drift_deg_per_year = 0.02;
  double propellant_kg = 50.0;
  double isp_s = 220.0;
  double dry_mass_kg = 3830.0;
  double monitor_duration_s = 10.0 * 86400.0;
  double sample_interval_s = 6.0 * 3600.0;
  double step_s = 60.0;
  double horizon_s = kDefaultMonitorHorizon;
  PerturbationSettings perturbations;
  double lifetime_years = 15.0;
  double sma_adjustment_m = 1000.0;
  FuelBudget to_budget() const;
  friend bool operator==(const StationkeepingConfig&, const StationkeepingConfig&) = default;
};

struct ConstellationConfig {
  int num_planes = 6;
  int sats_per_plane = 4;
  double inclination_deg = 55.0;
  double semi_major_axis_m = 26560e3;
  std::optional<double> raan_spacing_deg;
  std::optional<double> phase_offset_deg;
  double lat_step_deg = 10.0;
  double lon_step_deg = 10.0;
  double mask_deg = 5.0;
  std::optional<double> duration_s;  // default one orbital period
  double step_s = 60.0;
  ConstellationSpec to_spec() const;
  CoverageGrid to_grid() const;
  friend bool operator==(const ConstellationConfig&, const ConstellationConfig&) = default;
};

struct Scenario {
  std::uint64_t seed = 1;
  BodyConstants body;
  TransferConfig transfer;
  InsertionErrorConfig insertion_errors;
  ToleranceConfig tolerances;
  TrimConfig trim;
  AdcsConfig adcs;
  StationkeepingConfig stationkeeping;
  ConstellationConfig constellation;

  /// Checks every sub-configuration; throws ScenarioError naming the field.
  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses JSON text. Missing keys take the defaults above; unknown keys,
/// wrong types and invariant violations throw ScenarioError whose field()
/// is the dotted key path. Syntax errors report line and column.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical form: every field written, keys in schema order.
std::string dump_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

}  // namespace gpsim
