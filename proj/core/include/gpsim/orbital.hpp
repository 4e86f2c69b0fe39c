#pragma once

#include <vector>

#include "gpsim/math.hpp"

namespace gpsim {

/// Central-body constants. Defaults are Earth.
struct BodyConstants {
  double mu = 3.986e14;  ///< gravitational parameter, m^3/s^2
  double re = 6.378e6;   ///< equatorial radius, m
  double j2 = 1.0826e-3;

  /// Throws ConfigurationError unless mu > 0, re > 0, 0 <= j2 < 1.
  void validate() const;

  friend bool operator==(const BodyConstants&, const BodyConstants&) = default;
};

inline constexpr double kEarthRotationRate = 7.2921159e-5;  // rad/s

/// Inertial position/velocity at `epoch` seconds after scenario start.
struct StateVector {
  Vec3 position;  // m
  Vec3 velocity;  // m/s
  double epoch = 0.0;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// Classical elements of an elliptical orbit. Angles in radians, wrapped to [0, 2pi).
///
/// Singular cases follow one convention: for a circular orbit argp = 0 and
/// true_anomaly is the argument of latitude; for an equatorial orbit raan = 0
/// and argp is measured from the inertial x axis; for a circular equatorial
/// orbit both are 0 and true_anomaly is the true longitude.
struct KeplerianElements {
  double a = 0.0;
  double e = 0.0;
  double i = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double true_anomaly = 0.0;

  /// Throws DomainError / UnsupportedOrbitError for invalid sets.
  void validate() const;
  /// argp + true anomaly, wrapped.
  double argument_of_latitude() const { return wrap_two_pi(argp + true_anomaly); }

  friend bool operator==(const KeplerianElements&, const KeplerianElements&) = default;
};

/// Perturbing accelerations added to the central term.
///
/// SRP and lunisolar terms are constant-magnitude proxies: SRP points away
/// from the sun, the lunisolar proxy points along the normalized solar tidal
/// direction 3(s.r)s - r.
struct PerturbationConfig {
  bool enable_j2 = true;
  double srp_accel = 1e-7;        // m/s^2
  double lunisolar_accel = 1e-6;  // m/s^2

  void validate() const;
  static PerturbationConfig none() { return {false, 0.0, 0.0}; }
  static PerturbationConfig j2_only() { return {true, 0.0, 0.0}; }

  friend bool operator==(const PerturbationConfig&, const PerturbationConfig&) = default;
};

/// sqrt(mu / a).
double circular_speed(double a, const BodyConstants& body = {});
/// 2 pi sqrt(a^3 / mu).
double orbital_period(double a, const BodyConstants& body = {});
/// sqrt(mu / a^3).
double mean_motion(double a, const BodyConstants& body = {});
/// Vis-viva speed at radius r on an orbit of semi-major axis a.
double vis_viva_speed(double r, double a, const BodyConstants& body = {});

StateVector elements_to_state(const KeplerianElements& el, const BodyConstants& body = {},
                              double epoch = 0.0);
KeplerianElements state_to_elements(const StateVector& sv, const BodyConstants& body = {});

/// Solves Kepler's equation and advances the true anomaly by dt of unperturbed motion.
KeplerianElements advance_kepler(const KeplerianElements& el, double dt,
                                 const BodyConstants& body = {});

/// Total inertial acceleration on a point at sv.position.
Vec3 acceleration(const StateVector& sv, const PerturbationConfig& cfg,
                  const BodyConstants& body = {}, const Vec3& sun_direction = Vec3::unit_x());

/// Fixed-step RK4 propagation by dt seconds (final step shortened to land on dt).
StateVector propagate(const StateVector& sv, double dt, double step,
                      const PerturbationConfig& cfg, const BodyConstants& body = {},
                      const Vec3& sun_direction = Vec3::unit_x());

/// Propagates and samples the state every `sample_interval` seconds,
/// including the initial and final states.
std::vector<StateVector> propagate_sampled(const StateVector& sv, double duration, double step,
                                           double sample_interval, const PerturbationConfig& cfg,
                                           const BodyConstants& body = {},
                                           const Vec3& sun_direction = Vec3::unit_x());

/// Secular J2 node rate, rad/s:
/// -(3/2) J2 sqrt(mu) Re^2 a^(-7/2) (1 - e^2)^(-2) cos i.
double j2_nodal_rate(double a, double e, double i, const BodyConstants& body = {});

/// Specific orbital energy v^2/2 - mu/r.
double specific_energy(const StateVector& sv, const BodyConstants& body = {});
/// Specific energy including the J2 zonal potential; conserved under J2-only motion.
double specific_energy_j2(const StateVector& sv, const BodyConstants& body = {});

}  // namespace gpsim
