#include "gpsim/stationkeeping.hpp"

#include <cmath>
#include <string>

#include "gpsim/error.hpp"

namespace gpsim {

void FuelBudget::validate() const {
  if (!(propellant >= 0.0)) throw ConfigurationError("fuel.propellant must be non-negative");
  if (!(isp > 0.0)) throw ConfigurationError("fuel.isp must be positive");
  if (!(dry_mass > 0.0)) throw ConfigurationError("fuel.dry_mass must be positive");
}

void SlotSpec::validate() const {
  if (!(window_halfwidth > 0.0)) throw ConfigurationError("slot.window_halfwidth must be positive");
  if (!(nominal_sma > 0.0)) throw ConfigurationError("slot.nominal_sma must be positive");
  if (!(inclination_drift_rate >= 0.0)) {
    throw ConfigurationError("slot.inclination_drift_rate must be non-negative");
  }
}

double stationkeeping_dv(double r, double a, const BodyConstants& body) {
  if (!(r > 0.0) || !(a > 0.0)) throw DomainError("stationkeeping_dv: radii must be positive");
  const double term = 2.0 / r - 1.0 / a;
  if (!(term > 0.0)) throw DomainError("stationkeeping_dv: hyperbolic regime (2/r <= 1/a)");
  return std::sqrt(body.mu * term) - std::sqrt(body.mu / a);
}

double inclination_correction_dv(double delta_i, double v) {
  if (!(delta_i >= 0.0)) throw DomainError("inclination_correction_dv: delta_i must be >= 0");
  return 2.0 * v * std::sin(0.5 * delta_i);
}

DriftReport longitude_drift_monitor(const std::vector<ElementSample>& history,
                                    const SlotSpec& slot, const BodyConstants& body,
                                    double horizon) {
  if (history.size() < 2) throw DataError("longitude_drift_monitor: need at least two samples");
  if (!(horizon > 0.0)) throw DomainError("longitude_drift_monitor: horizon must be positive");
  slot.validate();

  const double n_ref = mean_motion(slot.nominal_sma, body);
  std::vector<double> phase;
  phase.reserve(history.size());
  for (const auto& s : history) {
    const double raw = wrap_pi(s.elements.argument_of_latitude() - slot.target_longitude -
                               n_ref * s.epoch);
    if (phase.empty()) {
      phase.push_back(raw);
    } else {
      phase.push_back(phase.back() + wrap_pi(raw - phase.back()));
    }
  }

  // least squares about the mean epoch
  const double n = static_cast<double>(history.size());
  double t_mean = 0.0, p_mean = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    t_mean += history[k].epoch;
    p_mean += phase[k];
  }
  t_mean /= n;
  p_mean /= n;
  double stt = 0.0, stp = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const double dt = history[k].epoch - t_mean;
    stt += dt * dt;
    stp += dt * (phase[k] - p_mean);
  }
  if (!(stt > 0.0)) throw DataError("longitude_drift_monitor: samples share one epoch");

  DriftReport rep;
  rep.drift_rate = stp / stt;
  rep.longitude = p_mean + rep.drift_rate * (history.back().epoch - t_mean);
  rep.projected_longitude = rep.longitude + rep.drift_rate * horizon;
  rep.maneuver_recommended = std::abs(rep.projected_longitude) > slot.window_halfwidth ||
                             std::abs(rep.longitude) > slot.window_halfwidth;
  if (!rep.maneuver_recommended) return rep;

  // new drift returns the phase to the center over the horizon
  rep.drift_rate_change = -rep.projected_longitude / horizon;
  const double a = slot.nominal_sma;
  rep.delta_a = -rep.drift_rate_change * a / (1.5 * n_ref);
  rep.dv = std::abs(stationkeeping_dv(a - std::abs(rep.delta_a), a, body));
  return rep;
}

double propellant_for(const FuelBudget& budget, double dv) {
  if (!(dv >= 0.0)) throw DomainError("apply_maneuver: dv must be non-negative");
  return budget.total_mass() * (1.0 - std::exp(-dv / (budget.isp * kG0)));
}

FuelBudget apply_maneuver(const FuelBudget& budget, double dv) {
  budget.validate();
  const double dm = propellant_for(budget, dv);
  if (dm > budget.propellant) throw FuelDepletedError(dm, budget.propellant);
  FuelBudget out = budget;
  out.propellant = budget.propellant - dm;
  return out;
}

ScheduleOutcome lifetime_schedule(const FuelBudget& budget, const SlotSpec& slot, double years,
                                  double sma_adjustment, const BodyConstants& body) {
  ScheduleOutcome out;
  out.final_budget = budget;
  const double a = slot.nominal_sma;
  const double v = circular_speed(a, body);
  const double inc_dv = inclination_correction_dv(slot.inclination_drift_rate, v);
  const double sma_dv = std::abs(stationkeeping_dv(a - sma_adjustment, a, body));
  const int whole_years = static_cast<int>(std::floor(years));
  for (int y = 1; y <= whole_years && !out.depleted; ++y) {
    for (const ScheduledBurn burn : {ScheduledBurn{double(y), inc_dv, "inclination"},
                                     ScheduledBurn{double(y), sma_dv, "semi_major_axis"}}) {
      try {
        const FuelBudget next = apply_maneuver(out.final_budget, burn.dv);
        out.propellant_used += out.final_budget.propellant - next.propellant;
        out.final_budget = next;
        out.total_dv += burn.dv;
        out.burns.push_back(burn);
      } catch (const FuelDepletedError&) {
        out.depleted = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace gpsim
