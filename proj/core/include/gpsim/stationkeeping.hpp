#pragma once

#include <vector>

#include "gpsim/orbital.hpp"
#include "gpsim/transfer.hpp"

namespace gpsim {

/// Hydrazine budget. Defaults: 50 kg of propellant at 220 s on a 3,830 kg dry bus.
struct FuelBudget {
  double propellant = 50.0;  // kg
  double isp = 220.0;        // s
  double dry_mass = 3830.0;  // kg

  double total_mass() const { return dry_mass + propellant; }
  void validate() const;
  friend bool operator==(const FuelBudget&, const FuelBudget&) = default;
};

/// Orbital slot: along-track phase window around a reference that advances
/// at the nominal mean motion.
struct SlotSpec {
  double target_longitude = 0.0;              // rad, argument-of-latitude phase at t = 0
  double window_halfwidth = 2.0 * kDeg;       // rad
  double target_inclination = 55.0 * kDeg;    // rad
  double inclination_drift_rate = 0.02 * kDeg;  // rad / year
  double nominal_sma = 26560e3;               // m

  void validate() const;
  friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

/// sqrt(mu (2/r - 1/a)) - sqrt(mu / a). Throws DomainError when 2/r <= 1/a
/// or either radius is non-positive.
double stationkeeping_dv(double r, double a, const BodyConstants& body = {});

/// 2 v sin(delta_i / 2).
double inclination_correction_dv(double delta_i, double v);

struct ElementSample {
  double epoch = 0.0;  // s
  KeplerianElements elements;
};

struct DriftReport {
  double longitude = 0.0;        // rad, phase offset from slot center at the last sample
  double drift_rate = 0.0;       // rad/s, least-squares slope
  double projected_longitude = 0.0;  // rad, at last epoch + horizon
  bool maneuver_recommended = false;
  double delta_a = 0.0;          // m, semi-major-axis trim (positive raises)
  double drift_rate_change = 0.0;  // rad/s, drift change produced by the trim
  double dv = 0.0;               // m/s, |stationkeeping_dv(a -/+ |delta_a|, a)|
};

inline constexpr double kDefaultMonitorHorizon = 30.0 * 86400.0;  // s

/// Fits the phase offset from the slot center linearly in time and, when the
/// projection over `horizon` leaves the window, sizes a semi-major-axis trim
/// whose drift change returns the phase toward the center over the horizon.
/// Needs at least two samples (DataError otherwise).
DriftReport longitude_drift_monitor(const std::vector<ElementSample>& history,
                                    const SlotSpec& slot, const BodyConstants& body = {},
                                    double horizon = kDefaultMonitorHorizon);

/// Consumes propellant for dv via the inverted rocket equation,
/// dm = m_total (1 - exp(-dv / (isp g0))). Throws FuelDepletedError when the
/// burn needs more than remains.
FuelBudget apply_maneuver(const FuelBudget& budget, double dv);

/// Mass expended for dv without mutating anything.
double propellant_for(const FuelBudget& budget, double dv);

struct ScheduledBurn {
  double epoch_years = 0.0;
  double dv = 0.0;
  const char* purpose = "";
};

struct ScheduleOutcome {
  std::vector<ScheduledBurn> burns;
  double total_dv = 0.0;
  double propellant_used = 0.0;
  FuelBudget final_budget;
  bool depleted = false;
};

/// Mission-life maneuver schedule: once per year an inclination correction for
/// that year's drift and one 1 km semi-major-axis adjustment sized by
/// stationkeeping_dv. Burns are charged to the budget in order.
ScheduleOutcome lifetime_schedule(const FuelBudget& budget, const SlotSpec& slot, double years,
                                  double sma_adjustment = 1000.0, const BodyConstants& body = {});

}  // namespace gpsim
