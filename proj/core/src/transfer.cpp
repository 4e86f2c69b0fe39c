#include "gpsim/transfer.hpp"

#include <cmath>
#include <string>

#include "gpsim/error.hpp"

namespace gpsim {

double rocket_dv(const StageSpec& stage) {
  if (!(stage.isp > 0.0)) throw DomainError("rocket_dv: isp must be positive");
  if (!(stage.mf > 0.0)) throw DomainError("rocket_dv: final mass must be positive");
  if (!(stage.m0 >= stage.mf)) {
    throw DomainError("rocket_dv: initial mass " + std::to_string(stage.m0) +
                      " kg is below final mass " + std::to_string(stage.mf) + " kg");
  }
  return stage.exhaust_velocity() * std::log(stage.m0 / stage.mf);
}

LaunchBudget launch_budget(const std::vector<StageSpec>& stages, double gravity_loss,
                           double required_dv) {
  if (stages.empty()) throw ConfigurationError("launch_budget: at least one stage is required");
  if (!(gravity_loss >= 0.0)) throw ConfigurationError("launch_budget: gravity loss must be >= 0");
  LaunchBudget b;
  for (const auto& s : stages) {
    const double dv = rocket_dv(s);
    b.stages.push_back({s.label, dv});
    b.gross_dv += dv;
  }
  b.gravity_loss = gravity_loss;
  b.net_dv = b.gross_dv - gravity_loss;
  b.required_dv = required_dv;
  b.shortfall = b.net_dv < required_dv;
  return b;
}

HohmannPlan hohmann_plan(double r1, double r2, const BodyConstants& body) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("hohmann_plan: radii must be positive");
  HohmannPlan p;
  p.r1 = r1;
  p.r2 = r2;
  const double sum = r1 + r2;
  p.dv1 = std::abs(std::sqrt(body.mu / r1) * (std::sqrt(2.0 * r2 / sum) - 1.0));
  p.dv2 = std::abs(std::sqrt(body.mu / r2) * (1.0 - std::sqrt(2.0 * r1 / sum)));
  p.a_transfer = 0.5 * sum;
  p.e_transfer = std::abs(r2 - r1) / sum;
  p.time_of_flight = kPi * std::sqrt(p.a_transfer * p.a_transfer * p.a_transfer / body.mu);
  return p;
}

ThrusterSpec ThrusterSpec::from_exhaust_velocity(double mdot, double ve) {
  if (!(mdot >= 0.0)) throw DomainError("thruster: mass flow must be non-negative");
  if (!(ve > 0.0)) throw DomainError("thruster: exhaust velocity must be positive");
  return {mdot, ve};
}

ThrusterSpec ThrusterSpec::from_isp(double mdot, double isp) {
  if (!(isp > 0.0)) throw DomainError("thruster: isp must be positive");
  return from_exhaust_velocity(mdot, isp * kG0);
}

double thrust(const ThrusterSpec& spec) { return spec.mdot() * spec.ve(); }

void InsertionTolerances::validate() const {
  if (!(sma_tol > 0.0)) throw ConfigurationError("tolerances.sma_tol must be positive");
  if (!(ecc_max > 0.0)) throw ConfigurationError("tolerances.ecc_max must be positive");
  if (!(inc_tol > 0.0)) throw ConfigurationError("tolerances.inc_tol must be positive");
}

InsertionReport check_insertion(const KeplerianElements& achieved, const KeplerianElements& target,
                                const InsertionTolerances& tol) {
  InsertionReport r;
  r.sma = {std::abs(achieved.a - target.a), tol.sma_tol, false};
  r.sma.pass = r.sma.deviation <= r.sma.limit;
  r.ecc = {achieved.e, tol.ecc_max, false};
  r.ecc.pass = r.ecc.deviation <= r.ecc.limit;
  r.inc = {std::abs(achieved.i - target.i), tol.inc_tol, false};
  r.inc.pass = r.inc.deviation <= r.inc.limit;
  r.pass = r.sma.pass && r.ecc.pass && r.inc.pass;
  return r;
}

TrimEstimate trim_dv_estimate(const KeplerianElements& achieved, const KeplerianElements& target,
                              const BodyConstants& body, const InsertionTolerances& tol,
                              double linear_factor) {
  const double da = std::abs(achieved.a - target.a);
  const double di = std::abs(achieved.i - target.i);
  const double de = std::abs(achieved.e - target.e);
  auto check = [&](double dev, double limit, const char* name) {
    if (dev > linear_factor * limit) {
      throw OutOfRangeError(std::string("trim_dv_estimate: ") + name + " deviation " +
                            std::to_string(dev) + " exceeds the linear regime (" +
                            std::to_string(linear_factor * limit) + "); replan the transfer");
    }
  };
  check(da, tol.sma_tol, "semi-major axis");
  check(di, tol.inc_tol, "inclination");
  check(de, tol.ecc_max, "eccentricity");

  const double v = circular_speed(target.a, body);
  TrimEstimate t;
  t.sma_dv = da * v / (2.0 * target.a);
  t.inc_dv = 2.0 * v * std::sin(0.5 * di);
  t.ecc_dv = 0.5 * v * de;
  return t;
}

}  // namespace gpsim
