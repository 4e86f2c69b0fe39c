#include "gpsim/attitude.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "gpsim/error.hpp"
#include "gpsim/integrator.hpp"

namespace gpsim {

namespace {

using AttitudeVector = std::array<double, 10>;  // q(4), w(3), h(3)

AttitudeVector pack(const Quat& q, const Vec3& w, const Vec3& h) {
  return {q.w, q.x, q.y, q.z, w.x, w.y, w.z, h.x, h.y, h.z};
}

}  // namespace

InertiaSpec::InertiaSpec(const Mat3& inertia) : inertia_(inertia) {
  if (!inertia.all_finite()) throw ConfigurationError("inertia: entries must be finite");
  double scale = 0.0;
  for (double v : inertia.m) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0)) throw ConfigurationError("inertia: matrix is zero");
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c)
      if (std::abs(inertia(r, c) - inertia(c, r)) > 1e-9 * scale)
        throw ConfigurationError("inertia: matrix is not symmetric");

  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = inertia(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m);
  const Eigen::Vector3d ev = eig.eigenvalues();  // ascending
  if (!(ev(0) > 0.0)) throw ConfigurationError("inertia: matrix is not positive definite");
  if (ev(0) + ev(1) < ev(2) * (1.0 - 1e-12)) {
    throw ConfigurationError("inertia: principal moments violate the triangle inequality");
  }
  principal_ = {ev(0), ev(1), ev(2)};
  inverse_ = inertia.inverse();
}

void WheelSpec::validate() const {
  if (!(max_torque > 0.0)) throw ConfigurationError("wheels.max_torque must be positive");
  if (!(max_momentum > 0.0)) throw ConfigurationError("wheels.max_momentum must be positive");
}

void MagnetorquerSpec::validate() const {
  if (!(max_dipole > 0.0)) throw ConfigurationError("magnetorquer.max_dipole must be positive");
}

EulerRates euler_rhs(const RigidBodyState& state, const InertiaSpec& inertia,
                     const Vec3& external_torque, const Vec3& wheel_torque) {
  const Vec3& w = state.omega;
  const Vec3 total_h = inertia.matrix() * w + state.wheel_momentum;
  const Vec3 net = external_torque - wheel_torque - cross(w, total_h);
  return {inertia.inverse() * net, wheel_torque};
}

Quat quat_kinematics(const UnitQuaternion& q, const Vec3& omega) {
  return 0.5 * hamilton(q.raw(), Quat{0.0, omega.x, omega.y, omega.z});
}

Vec3 magnetorquer_torque(const Vec3& commanded_dipole, const Vec3& b_body,
                         const MagnetorquerSpec& spec) {
  const double lim = spec.max_dipole;
  const Vec3 m = clamp_abs(commanded_dipole, {lim, lim, lim});
  return cross(m, b_body);
}

Vec3 dipole_field(const Vec3& position, const BodyConstants& body, double surface_field) {
  const double r = position.norm();
  if (!(r > 0.5 * body.re)) throw DomainError("dipole_field: position is too close to the center");
  const Vec3 rh = position / r;
  const double ratio = body.re / r;
  const double scale = surface_field * ratio * ratio * ratio;
  // dipole moment along -z: B = B0 (Re/r)^3 [3 (m.r) r - m], m = -z
  const Vec3 m{0.0, 0.0, -1.0};
  return scale * (3.0 * dot(m, rh) * rh - m);
}

AttitudeStepResult step_attitude(const RigidBodyState& state, const InertiaSpec& inertia,
                                 const WheelSpec& wheels, const Vec3& external_torque,
                                 const Vec3& wheel_torque_command, double dt) {
  if (!(dt > 0.0)) throw DomainError("step_attitude: dt must be positive");
  if (!external_torque.all_finite() || !wheel_torque_command.all_finite()) {
    throw IntegrationError(state.epoch, "non-finite torque");
  }

  AttitudeStepResult out;
  const double tmax = wheels.max_torque;
  Vec3 tau = clamp_abs(wheel_torque_command, {tmax, tmax, tmax});
  for (int k = 0; k < 3; ++k) {
    const double h = state.wheel_momentum[k];
    if (std::abs(h) >= wheels.max_momentum && tau[k] * h > 0.0) {
      tau[k] = 0.0;
      out.wheel_saturated = true;
    }
  }
  out.applied_wheel_torque = tau;

  const Mat3& inertia_m = inertia.matrix();
  const Mat3& inertia_inv = inertia.inverse();
  auto rhs = [&](double /*t*/, const AttitudeVector& x) {
    const Quat q{x[0], x[1], x[2], x[3]};
    const Vec3 w{x[4], x[5], x[6]};
    const Vec3 h{x[7], x[8], x[9]};
    const Quat qd = 0.5 * hamilton(q, Quat{0.0, w.x, w.y, w.z});
    const Vec3 wd = inertia_inv * (external_torque - tau - cross(w, inertia_m * w + h));
    return AttitudeVector{qd.w, qd.x, qd.y, qd.z, wd.x, wd.y, wd.z, tau.x, tau.y, tau.z};
  };

  const AttitudeVector x1 =
      rk4_step(rhs, pack(state.q.raw(), state.omega, state.wheel_momentum), state.epoch, dt);

  out.state.q = UnitQuaternion(x1[0], x1[1], x1[2], x1[3]);
  out.state.omega = {x1[4], x1[5], x1[6]};
  Vec3 h{x1[7], x1[8], x1[9]};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(h[k]) > wheels.max_momentum) {
      h[k] = std::copysign(wheels.max_momentum, h[k]);
      out.wheel_saturated = true;
    }
  }
  out.state.wheel_momentum = h;
  out.state.epoch = state.epoch + dt;
  return out;
}

double rotational_energy(const RigidBodyState& state, const InertiaSpec& inertia) {
  return 0.5 * dot(state.omega, inertia.matrix() * state.omega);
}

Vec3 inertial_angular_momentum(const RigidBodyState& state, const InertiaSpec& inertia) {
  return quat_rotate(state.q, inertia.matrix() * state.omega + state.wheel_momentum);
}

}  // namespace gpsim
