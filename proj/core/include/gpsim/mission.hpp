#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gpsim/scenario.hpp"
#include "gpsim/telemetry.hpp"

namespace gpsim {

/// A reported failure that did not abort the run.
struct MissionEvent {
  double epoch = 0.0;
  std::string kind;  // error kind tag, e.g. "fuel_depleted"
  std::string message;
};

struct InsertionOutcome {
  KeplerianElements target;
  KeplerianElements achieved;  // osculating, right after the arrival burn
  InsertionReport gate;
  double timing_error_s = 0.0;
  Vec3 velocity_error;          // m/s, (radial, along-track, cross-track) at the burn
  bool trim_required = false;
  TrimEstimate trim;
  double trim_dv = 0.0;         // m/s, 0 when the gate passes
  bool trim_in_band = false;    // trim_dv inside the configured band
  bool trim_applied = false;
  bool unrecoverable = false;   // deviation beyond the linear trim model
  KeplerianElements final_orbit;  // orbit handed to the later phases
};

struct AdcsSummary {
  bool ran = false;
  double duration_s = 0.0;
  double pointing_rms_deg = 0.0;    // second half of the phase
  double pointing_max_deg = 0.0;    // second half of the phase
  double final_pointing_deg = 0.0;
  double knowledge_rms_deg = 0.0;   // second half of the phase
  double thruster_fuel_kg = 0.0;
  int rejected_updates = 0;
  int saturated_steps = 0;
  std::vector<std::pair<double, std::string>> mode_changes;  // (epoch, "MODE:reason")
  std::string final_mode;
};

struct StationkeepingSummary {
  bool ran = false;
  DriftReport drift;
  bool maneuver_applied = false;
  double maneuver_dv = 0.0;
  ScheduleOutcome lifetime;
};

struct MissionReport {
  std::uint64_t seed = 0;
  LaunchBudget launch;
  HohmannPlan plan;
  InsertionOutcome insertion;
  AdcsSummary adcs;
  StationkeepingSummary stationkeeping;
  double fuel_initial_kg = 0.0;
  double fuel_final_kg = 0.0;
  bool completed = false;  // every enabled phase ran
  std::vector<MissionEvent> events;

  double fuel_used_kg() const { return fuel_initial_kg - fuel_final_kg; }
  bool has_event(const std::string& kind) const;
};

struct MissionResult {
  MissionReport report;
  std::vector<TelemetryRecord> telemetry;
};

/// Launch budget, transfer plan, insertion with sampled errors, tolerance
/// gate and trim, closed-loop ADCS, then station keeping. Deterministic for a
/// given scenario (seed included). Budget shortfall, fuel depletion and an
/// unrecoverable gate miss are recorded in `events`; the last one ends the run
/// after the insertion row.
MissionResult run_mission(const Scenario& s);

/// ADCS phase alone, on the nominal target orbit.
MissionResult run_adcs(const Scenario& s);
/// Station-keeping phase alone, from the nominal target orbit.
MissionResult run_stationkeeping(const Scenario& s);

/// Seed of Monte Carlo run `index`. Run 0 uses the base seed itself.
std::uint64_t run_seed(std::uint64_t base_seed, int index);

struct Percentiles {
  double p05 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  int count = 0;

  friend bool operator==(const Percentiles&, const Percentiles&) = default;
};

/// Linear-interpolated percentiles; empty input gives all zeros.
Percentiles percentiles(std::vector<double> values);

struct MonteCarloRun {
  int index = 0;
  MissionReport report;
};

struct MonteCarloSummary {
  int runs = 0;
  int gate_passes = 0;
  double gate_pass_rate = 0.0;
  double gate_pass_stderr = 0.0;  // sqrt(p (1 - p) / n)
  int trims_required = 0;
  int trims_in_band = 0;
  double trim_band_fraction = 0.0;  // of all runs
  int unrecoverable = 0;
  Percentiles trim_dv_mps;          // over runs that needed a trim
  Percentiles pointing_rms_deg;     // over runs whose ADCS phase ran
  Percentiles fuel_used_kg;
  std::map<std::string, int> error_tally;

  friend bool operator==(const MonteCarloSummary&, const MonteCarloSummary&) = default;
};

/// Order-independent reduction of finished runs.
MonteCarloSummary summarize_runs(const std::vector<MonteCarloRun>& runs);

/// n_runs independent missions with seeds run_seed(s.seed, k), executed on
/// up to `threads` workers (0 picks the hardware count). The summary does
/// not depend on the thread count.
MonteCarloSummary monte_carlo(const Scenario& s, int n_runs, unsigned threads = 0);

/// Same, also returning every run ordered by index.
std::vector<MonteCarloRun> monte_carlo_runs(const Scenario& s, int n_runs, unsigned threads = 0);

}  // namespace gpsim
