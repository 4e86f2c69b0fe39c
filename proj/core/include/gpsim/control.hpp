#pragma once

#include <Eigen/Dense>
#include <string>

#include "gpsim/attitude.hpp"
#include "gpsim/estimation.hpp"
#include "gpsim/math.hpp"
#include "gpsim/orbital.hpp"

namespace gpsim {

/// Per-axis PD/PID gains. kp in N m/rad, ki in N m/(rad s), kd in N m s/rad.
/// integrator_limit clamps each axis of the error integral (rad s).
struct PidGains {
  Vec3 kp{1.0, 1.0, 1.0};
  Vec3 ki{0.0, 0.0, 0.0};
  Vec3 kd{1.0, 1.0, 1.0};
  double integrator_limit = 0.1;

  void validate() const;
  friend bool operator==(const PidGains&, const PidGains&) = default;
};

/// Rotation vector of q_target^-1 (x) q_current, shortest path. Expressed in
/// body axes; zero when the attitudes coincide.
Vec3 attitude_error(const UnitQuaternion& q_current, const UnitQuaternion& q_target);

/// tau = -kp * error - kd * rate.
Vec3 pd_torque(const Vec3& error, const Vec3& rate, const PidGains& gains);

struct PidOutput {
  Vec3 torque;
  Vec3 integral;  // updated error integral
};

/// PD plus -ki * integral(error dt); the integral is clamped per axis to
/// +/- integrator_limit before use.
PidOutput pid_torque(const Vec3& error, const Vec3& rate, const Vec3& integral, double dt,
                     const PidGains& gains);

using Matrix3x6 = Eigen::Matrix<double, 3, 6>;

/// Weights for the small-angle attitude regulator. State is
/// (attitude error, body rate); input is body torque.
struct LqrSpec {
  Matrix6 Q = Matrix6::Identity();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  InertiaSpec inertia = InertiaSpec::diagonal(1.0, 1.0, 1.0);
};

struct LqrResult {
  Matrix3x6 K = Matrix3x6::Zero();
  Matrix6 P = Matrix6::Zero();
  double residual = 0.0;             // ||A^T P + P A - P B R^-1 B^T P + Q||_F
  int iterations = 0;
  double max_closed_loop_real = 0.0; // largest real part of eig(A - B K)
};

/// Linearized plant about zero rate: theta' = w, w' = I^-1 u.
Matrix6 lqr_state_matrix();
Eigen::Matrix<double, 6, 3> lqr_input_matrix(const InertiaSpec& inertia);

/// Continuous-time LQR gain by Newton-Kleinman iteration.
///
/// Starting from the stabilizing seed u = -I (theta + 2 w), each iteration
/// solves the closed-loop Lyapunov equation for P and sets K = R^-1 B^T P;
/// the sequence converges quadratically to the stabilizing CARE solution.
/// Throws ConfigurationError for invalid weights and SynthesisError if the
/// iteration cap is hit, the relative residual exceeds 1e-9, or A - B K is
/// not Hurwitz.
LqrResult lqr_gain(const LqrSpec& spec, int max_iterations = 60);

/// CARE residual norm for given matrices.
double care_residual(const Matrix6& A, const Eigen::Matrix<double, 6, 3>& B, const Matrix6& Q,
                     const Eigen::Matrix3d& R, const Matrix6& P);

/// u = -K [error; rate].
Vec3 lqr_torque(const Matrix3x6& K, const Vec3& error, const Vec3& rate);

/// Cross-product unloading law m = (gain / |B|^2) (h x B), clamped per axis.
/// The resulting torque satisfies h . (m x B) <= 0. Throws DomainError for a
/// zero field.
Vec3 momentum_dump_command(const Vec3& wheel_momentum, const Vec3& b_body, double gain,
                           const MagnetorquerSpec& spec);

enum class Mode { NominalPointing, MomentumDump, SafeHold };
const char* to_string(Mode mode);

struct ControlMode {
  Mode mode = Mode::NominalPointing;
  double entry_epoch = 0.0;
  std::string reason = "initial";

  friend bool operator==(const ControlMode&, const ControlMode&) = default;
};

struct SupervisorTelemetry {
  double epoch = 0.0;
  bool estimator_diverged = false;
  bool wheel_fault = false;
  double wheel_momentum_fraction = 0.0;  // max |h_i| / max_momentum
  double rate_magnitude = 0.0;           // rad/s
  bool resume_nominal_command = false;   // ground command
};

struct SupervisorConfig {
  double rate_limit = 2.0 * kDeg;  // rad/s
  double dump_enter_fraction = 0.8;
  double dump_exit_fraction = 0.2;

  void validate() const;
  friend bool operator==(const SupervisorConfig&, const SupervisorConfig&) = default;
};

/// Deterministic mode state machine. Allowed edges: NOMINAL <-> DUMP,
/// any -> SAFE_HOLD on an anomaly, SAFE_HOLD -> NOMINAL on ground command only.
ControlMode mode_supervisor(const ControlMode& current, const SupervisorTelemetry& telemetry,
                            const SupervisorConfig& config = {});

/// Sun-pointing and rate damping used in SAFE_HOLD, driven by the coarse
/// sun vector and thruster torque.
struct SafeHoldGains {
  double kp = 2.0;           // N m per unit of |panel x sun|
  double kd = 40.0;          // N m s/rad
  double max_torque = 2.0;   // N m per axis (thrusters)
  Vec3 panel_axis = Vec3::unit_x();

  friend bool operator==(const SafeHoldGains&, const SafeHoldGains&) = default;
};

Vec3 safe_hold_torque(const Vec3& sun_body, const Vec3& omega, const SafeHoldGains& gains);

/// Earth-pointing target: body +z toward nadir, body +x (panel normal) as
/// close to the sun as the nadir constraint allows, body +y completing the
/// frame. Falls back to the velocity direction when sun and nadir align.
UnitQuaternion nadir_pointing_target(const StateVector& sv, const Vec3& sun_direction);

}  // namespace gpsim
