#include "gpsim/orbital.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gpsim/error.hpp"
#include "gpsim/integrator.hpp"

namespace gpsim {

namespace {

// below this eccentricity / node-vector ratio the orbit is treated as circular / equatorial
constexpr double kSingularTol = 1e-10;

void require_positive_sma(double a, const char* what) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(what) + ": semi-major axis must be positive, got " +
                      std::to_string(a));
  }
}

double angle_in_plane(const Vec3& from, const Vec3& to, const Vec3& normal) {
  return wrap_two_pi(std::atan2(dot(cross(from, to), normal), dot(from, to)));
}

using OrbitState = std::array<double, 6>;

OrbitState pack(const StateVector& sv) {
  return {sv.position.x, sv.position.y, sv.position.z,
          sv.velocity.x, sv.velocity.y, sv.velocity.z};
}

}  // namespace

void BodyConstants::validate() const {
  if (!(mu > 0.0)) throw ConfigurationError("body.mu must be positive");
  if (!(re > 0.0)) throw ConfigurationError("body.re must be positive");
  if (!(j2 >= 0.0 && j2 < 1.0)) throw ConfigurationError("body.j2 must lie in [0, 1)");
}

void KeplerianElements::validate() const {
  require_positive_sma(a, "elements");
  if (!(e >= 0.0)) throw DomainError("elements: eccentricity must be non-negative");
  if (!(e < 1.0)) throw UnsupportedOrbitError("elements: only elliptical orbits (e < 1) are supported");
  if (!std::isfinite(i) || !std::isfinite(raan) || !std::isfinite(argp) ||
      !std::isfinite(true_anomaly)) {
    throw DomainError("elements: angles must be finite");
  }
  if (i < 0.0 || i > kPi) throw DomainError("elements: inclination must lie in [0, pi]");
}

void PerturbationConfig::validate() const {
  if (!(srp_accel >= 0.0)) throw ConfigurationError("srp_accel must be non-negative");
  if (!(lunisolar_accel >= 0.0)) throw ConfigurationError("lunisolar_accel must be non-negative");
}

double circular_speed(double a, const BodyConstants& body) {
  require_positive_sma(a, "circular_speed");
  return std::sqrt(body.mu / a);
}

double orbital_period(double a, const BodyConstants& body) {
  require_positive_sma(a, "orbital_period");
  return kTwoPi * std::sqrt(a * a * a / body.mu);
}

double mean_motion(double a, const BodyConstants& body) {
  require_positive_sma(a, "mean_motion");
  return std::sqrt(body.mu / (a * a * a));
}

double vis_viva_speed(double r, double a, const BodyConstants& body) {
  if (!(r > 0.0)) throw DomainError("vis_viva_speed: radius must be positive");
  require_positive_sma(a, "vis_viva_speed");
  const double term = 2.0 / r - 1.0 / a;
  if (!(term > 0.0)) throw DomainError("vis_viva_speed: radius beyond apoapsis reach");
  return std::sqrt(body.mu * term);
}

StateVector elements_to_state(const KeplerianElements& el, const BodyConstants& body,
                              double epoch) {
  el.validate();
  const double p = el.a * (1.0 - el.e * el.e);
  const double cnu = std::cos(el.true_anomaly);
  const double snu = std::sin(el.true_anomaly);
  const double r = p / (1.0 + el.e * cnu);
  const double vk = std::sqrt(body.mu / p);

  const Vec3 r_pf{r * cnu, r * snu, 0.0};
  const Vec3 v_pf{-vk * snu, vk * (el.e + cnu), 0.0};

  const double cO = std::cos(el.raan), sO = std::sin(el.raan);
  const double ci = std::cos(el.i), si = std::sin(el.i);
  const double cw = std::cos(el.argp), sw = std::sin(el.argp);
  // perifocal -> inertial, R3(-raan) R1(-i) R3(-argp)
  const Mat3 q{{cO * cw - sO * sw * ci, -cO * sw - sO * cw * ci, sO * si,
                sO * cw + cO * sw * ci, -sO * sw + cO * cw * ci, -cO * si,
                sw * si, cw * si, ci}};
  return {q * r_pf, q * v_pf, epoch};
}

KeplerianElements state_to_elements(const StateVector& sv, const BodyConstants& body) {
  const Vec3& r = sv.position;
  const Vec3& v = sv.velocity;
  const double rn = r.norm();
  const double vn = v.norm();
  if (!(rn > 0.0) || !(vn > 0.0) || !r.all_finite() || !v.all_finite()) {
    throw UnsupportedOrbitError("state_to_elements: degenerate state");
  }
  const Vec3 h = cross(r, v);
  const double hn = h.norm();
  if (hn <= 1e-12 * rn * vn) throw UnsupportedOrbitError("state_to_elements: rectilinear motion");

  const double energy = 0.5 * vn * vn - body.mu / rn;
  if (!(energy < 0.0)) throw UnsupportedOrbitError("state_to_elements: orbit is not elliptical");

  KeplerianElements el;
  el.a = -body.mu / (2.0 * energy);
  const Vec3 e_vec = ((vn * vn - body.mu / rn) * r - dot(r, v) * v) / body.mu;
  el.e = e_vec.norm();
  if (el.e >= 1.0) throw UnsupportedOrbitError("state_to_elements: orbit is not elliptical");

  const Vec3 h_hat = h / hn;
  el.i = std::acos(std::clamp(h_hat.z, -1.0, 1.0));

  const Vec3 node{-h.y, h.x, 0.0};
  const bool equatorial = node.norm() <= kSingularTol * hn;
  const bool circular = el.e <= kSingularTol;

  const Vec3 reference = equatorial ? Vec3::unit_x() : node.normalized();
  el.raan = equatorial ? 0.0 : wrap_two_pi(std::atan2(node.y, node.x));
  if (circular) {
    el.argp = 0.0;
    el.true_anomaly = angle_in_plane(reference, r, h_hat);
  } else {
    el.argp = angle_in_plane(reference, e_vec, h_hat);
    el.true_anomaly = angle_in_plane(e_vec, r, h_hat);
  }
  return el;
}

KeplerianElements advance_kepler(const KeplerianElements& el, double dt,
                                 const BodyConstants& body) {
  el.validate();
  const double e = el.e;
  const double nu = el.true_anomaly;
  double ecc_anom = 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(0.5 * nu),
                                     std::sqrt(1.0 + e) * std::cos(0.5 * nu));
  double mean_anom = ecc_anom - e * std::sin(ecc_anom);
  mean_anom = wrap_two_pi(mean_anom + mean_motion(el.a, body) * dt);

  double ecc = e < 0.8 ? mean_anom : kPi;
  for (int it = 0; it < 50; ++it) {
    const double f = ecc - e * std::sin(ecc) - mean_anom;
    const double step = f / (1.0 - e * std::cos(ecc));
    ecc -= step;
    if (std::abs(step) < 1e-15) break;
  }
  KeplerianElements out = el;
  out.true_anomaly = wrap_two_pi(2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * ecc),
                                                  std::sqrt(1.0 - e) * std::cos(0.5 * ecc)));
  return out;
}

Vec3 acceleration(const StateVector& sv, const PerturbationConfig& cfg, const BodyConstants& body,
                  const Vec3& sun_direction) {
  const Vec3& r = sv.position;
  const double rn = r.norm();
  if (!(rn > 0.0)) throw SingularityError("acceleration: position at the body center");

  const double r2 = rn * rn;
  Vec3 acc = (-body.mu / (r2 * rn)) * r;

  if (cfg.enable_j2 && body.j2 != 0.0) {
    const double zr2 = (r.z * r.z) / r2;
    const double k = -1.5 * body.j2 * body.mu * body.re * body.re / (r2 * r2 * rn);
    acc += Vec3{k * r.x * (1.0 - 5.0 * zr2), k * r.y * (1.0 - 5.0 * zr2),
                k * r.z * (3.0 - 5.0 * zr2)};
  }

  if (cfg.srp_accel > 0.0 || cfg.lunisolar_accel > 0.0) {
    const Vec3 s = sun_direction.normalized();
    acc += (-cfg.srp_accel) * s;
    const Vec3 rh = r / rn;
    const Vec3 tidal = 3.0 * dot(s, rh) * s - rh;  // |tidal| >= 1
    acc += (cfg.lunisolar_accel / tidal.norm()) * tidal;
  }
  return acc;
}

StateVector propagate(const StateVector& sv, double dt, double step, const PerturbationConfig& cfg,
                      const BodyConstants& body, const Vec3& sun_direction) {
  auto samples = propagate_sampled(sv, dt, step, dt > 0.0 ? dt : 1.0, cfg, body, sun_direction);
  return samples.back();
}

std::vector<StateVector> propagate_sampled(const StateVector& sv, double duration, double step,
                                           double sample_interval, const PerturbationConfig& cfg,
                                           const BodyConstants& body, const Vec3& sun_direction) {
  if (!(duration >= 0.0)) throw DomainError("propagate: dt must be non-negative");
  if (!(step > 0.0)) throw DomainError("propagate: step must be positive");
  if (!(sample_interval > 0.0)) throw DomainError("propagate: sample interval must be positive");
  cfg.validate();
  if (sv.position.norm() <= body.re) throw ImpactError(sv.epoch);

  auto rhs = [&](double t, const OrbitState& x) {
    const StateVector s{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}, t};
    const Vec3 a = acceleration(s, cfg, body, sun_direction);
    return OrbitState{x[3], x[4], x[5], a.x, a.y, a.z};
  };

  std::vector<StateVector> out{sv};
  OrbitState x = pack(sv);
  double elapsed = 0.0;
  double next_sample = sample_interval;
  while (elapsed < duration) {
    // land exactly on sample instants and on the final time
    const double target = std::min(next_sample, duration);
    const double h = std::min(step, target - elapsed);
    x = rk4_step(rhs, x, sv.epoch + elapsed, h);
    elapsed = (h == target - elapsed) ? target : elapsed + h;
    const Vec3 pos{x[0], x[1], x[2]};
    if (pos.norm() <= body.re) throw ImpactError(sv.epoch + elapsed);
    if (elapsed >= target) {
      out.push_back({pos, {x[3], x[4], x[5]}, sv.epoch + elapsed});
      next_sample += sample_interval;
    }
  }
  return out;
}

double j2_nodal_rate(double a, double e, double i, const BodyConstants& body) {
  require_positive_sma(a, "j2_nodal_rate");
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("j2_nodal_rate: eccentricity must lie in [0, 1)");
  const double one_minus_e2 = 1.0 - e * e;
  return -1.5 * body.j2 * std::sqrt(body.mu) * body.re * body.re * std::pow(a, -3.5) /
         (one_minus_e2 * one_minus_e2) * std::cos(i);
}

double specific_energy(const StateVector& sv, const BodyConstants& body) {
  return 0.5 * sv.velocity.squared_norm() - body.mu / sv.position.norm();
}

double specific_energy_j2(const StateVector& sv, const BodyConstants& body) {
  const double r = sv.position.norm();
  const double sin2 = (sv.position.z * sv.position.z) / (r * r);
  const double u_j2 = body.mu * body.j2 * body.re * body.re / (2.0 * r * r * r) * (3.0 * sin2 - 1.0);
  return specific_energy(sv, body) + u_j2;
}

}  // namespace gpsim
