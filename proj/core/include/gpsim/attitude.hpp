#pragma once

#include "gpsim/math.hpp"
#include "gpsim/orbital.hpp"

namespace gpsim {

/// Rigid-body truth state. `q` maps body to inertial coordinates; omega and
/// wheel_momentum are expressed in body axes.
struct RigidBodyState {
  UnitQuaternion q;
  Vec3 omega;           // rad/s
  Vec3 wheel_momentum;  // N m s
  double epoch = 0.0;

  friend bool operator==(const RigidBodyState&, const RigidBodyState&) = default;
};

/// Satellite inertia matrix with its inverse cached.
class InertiaSpec {
 public:
  /// Throws ConfigurationError unless symmetric (1e-9 relative), positive
  /// definite and satisfying the principal-moment triangle inequality.
  explicit InertiaSpec(const Mat3& inertia);
  static InertiaSpec diagonal(double ixx, double iyy, double izz) {
    return InertiaSpec(Mat3::diagonal(ixx, iyy, izz));
  }

  const Mat3& matrix() const { return inertia_; }
  const Mat3& inverse() const { return inverse_; }
  Vec3 principal_moments() const { return principal_; }

 private:
  Mat3 inertia_;
  Mat3 inverse_;
  Vec3 principal_;
};

struct WheelSpec {
  double max_torque = 0.2;     // N m per axis
  double max_momentum = 4.0;   // N m s per axis
  void validate() const;
  friend bool operator==(const WheelSpec&, const WheelSpec&) = default;
};

struct MagnetorquerSpec {
  double max_dipole = 200.0;  // A m^2 per axis
  void validate() const;
  friend bool operator==(const MagnetorquerSpec&, const MagnetorquerSpec&) = default;
};

struct EulerRates {
  Vec3 omega_dot;          // rad/s^2
  Vec3 wheel_momentum_dot; // N m
};

/// Euler's rotational equation with stored wheel momentum:
///   I w' = T_ext - tau_w - w x (I w + h),   h' = tau_w.
/// The wheel torque tau_w acts on the wheels; the body feels -tau_w.
EulerRates euler_rhs(const RigidBodyState& state, const InertiaSpec& inertia,
                     const Vec3& external_torque, const Vec3& wheel_torque);

/// q' = 1/2 q (x) (0, w).
Quat quat_kinematics(const UnitQuaternion& q, const Vec3& omega);

/// tau = m x B with m clamped per axis to the coil limit.
Vec3 magnetorquer_torque(const Vec3& commanded_dipole, const Vec3& b_body,
                         const MagnetorquerSpec& spec);

inline constexpr double kDipoleSurfaceField = 3.12e-5;  // T, equatorial surface

/// Centered axial dipole aligned with the inertial z axis (field points
/// north at the equator). Throws DomainError inside Re/2.
Vec3 dipole_field(const Vec3& position, const BodyConstants& body = {},
                  double surface_field = kDipoleSurfaceField);

struct AttitudeStepResult {
  RigidBodyState state;
  Vec3 applied_wheel_torque;  // after torque and momentum saturation
  bool wheel_saturated = false;
};

/// One RK4 step of (q, w, h). Wheel torque commands are clipped to
/// max_torque; an axis already at max_momentum receives no torque that would
/// push it further. Stored momentum is clamped afterwards and q renormalized.
AttitudeStepResult step_attitude(const RigidBodyState& state, const InertiaSpec& inertia,
                                 const WheelSpec& wheels, const Vec3& external_torque,
                                 const Vec3& wheel_torque_command, double dt);

/// Rotational kinetic energy of the body, 1/2 w^T I w.
double rotational_energy(const RigidBodyState& state, const InertiaSpec& inertia);
/// Total system angular momentum (body + wheels) expressed in inertial axes.
Vec3 inertial_angular_momentum(const RigidBodyState& state, const InertiaSpec& inertia);

}  // namespace gpsim
