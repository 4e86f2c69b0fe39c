#pragma once

#include <string>
#include <vector>

#include "gpsim/orbital.hpp"

namespace gpsim {

/// Standard gravity for Isp <-> exhaust velocity conversion.
inline constexpr double kG0 = 9.80665;

struct StageSpec {
  std::string label;
  double isp = 0.0;  // s
  double m0 = 0.0;   // kg, ignition mass
  double mf = 0.0;   // kg, burnout mass

  double exhaust_velocity() const { return isp * kG0; }
  friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

/// ve * ln(m0 / mf). m0 == mf gives 0; m0 < mf, mf <= 0 or isp <= 0 throw DomainError.
double rocket_dv(const StageSpec& stage);

struct StageDv {
  std::string label;
  double dv = 0.0;
};

struct LaunchBudget {
  std::vector<StageDv> stages;
  double gross_dv = 0.0;     // sum of stage dv
  double gravity_loss = 0.0;
  double net_dv = 0.0;       // gross - gravity loss
  double required_dv = 0.0;
  bool shortfall = false;    // net < required
};

inline constexpr double kDefaultGravityLoss = 2000.0;       // m/s
inline constexpr double kDefaultRequiredInsertionDv = 10000.0;  // m/s

/// Sums stage dv, subtracts the gravity loss and flags a shortfall against
/// `required_dv`. An empty stage list throws ConfigurationError.
LaunchBudget launch_budget(const std::vector<StageSpec>& stages,
                           double gravity_loss = kDefaultGravityLoss,
                           double required_dv = kDefaultRequiredInsertionDv);

/// Two-impulse tangent-ellipse transfer between circular radii r1 and r2.
struct HohmannPlan {
  double r1 = 0.0;
  double r2 = 0.0;
  double dv1 = 0.0;            // m/s, departure burn magnitude
  double dv2 = 0.0;            // m/s, arrival burn magnitude
  double a_transfer = 0.0;     // m
  double e_transfer = 0.0;
  double time_of_flight = 0.0; // s, half the transfer-orbit period

  double total_dv() const { return dv1 + dv2; }
};

/// Lowering transfers (r2 < r1) use the same formulas with magnitudes reported.
HohmannPlan hohmann_plan(double r1, double r2, const BodyConstants& body = {});

/// Thruster described by mass flow and exhaust velocity (ve == isp * g0).
class ThrusterSpec {
 public:
  static ThrusterSpec from_exhaust_velocity(double mdot, double ve);
  static ThrusterSpec from_isp(double mdot, double isp);

  double mdot() const { return mdot_; }
  double ve() const { return ve_; }
  double isp() const { return ve_ / kG0; }

 private:
  ThrusterSpec(double mdot, double ve) : mdot_(mdot), ve_(ve) {}
  double mdot_;
  double ve_;
};

/// F = mdot * ve.
double thrust(const ThrusterSpec& spec);

struct InsertionTolerances {
  double sma_tol = 1000.0;          // m
  double ecc_max = 0.005;
  double inc_tol = 0.1 * kDeg;      // rad

  void validate() const;
  friend bool operator==(const InsertionTolerances&, const InsertionTolerances&) = default;
};

struct ToleranceChannel {
  double deviation = 0.0;  // |achieved - target| (eccentricity: achieved value)
  double limit = 0.0;
  bool pass = false;
};

struct InsertionReport {
  ToleranceChannel sma;
  ToleranceChannel ecc;
  ToleranceChannel inc;
  bool pass = false;
};

/// Compares osculating elements against the target at a single epoch.
InsertionReport check_insertion(const KeplerianElements& achieved, const KeplerianElements& target,
                                const InsertionTolerances& tol = {});

struct TrimEstimate {
  double sma_dv = 0.0;  // |da| v / (2a)
  double inc_dv = 0.0;  // 2 v sin(|di| / 2)
  double ecc_dv = 0.0;  // v |de| / 2
  double total() const { return sma_dv + inc_dv + ecc_dv; }
};

/// Linearized correction cost at the target's circular speed. Throws
/// OutOfRangeError when any channel exceeds `linear_factor` times its
/// tolerance, since the small-deviation model no longer applies and the
/// transfer should be replanned.
TrimEstimate trim_dv_estimate(const KeplerianElements& achieved, const KeplerianElements& target,
                              const BodyConstants& body = {}, const InsertionTolerances& tol = {},
                              double linear_factor = 10.0);

}  // namespace gpsim
