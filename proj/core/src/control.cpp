#include "gpsim/control.hpp"

#include <cmath>

#include "gpsim/error.hpp"

namespace gpsim {

namespace {

using Matrix36 = Eigen::Matrix<double, 36, 36>;

// Solves Ac^T P + P Ac + M = 0 through the Kronecker form.
Matrix6 solve_lyapunov(const Matrix6& ac, const Matrix6& m) {
  const Matrix6 act = ac.transpose();
  Matrix36 l = Matrix36::Zero();
  for (int i = 0; i < 6; ++i) {
    // I (x) Ac^T
    l.block<6, 6>(6 * i, 6 * i) += act;
    // Ac^T (x) I
    for (int j = 0; j < 6; ++j) {
      l.block<6, 6>(6 * i, 6 * j) += act(i, j) * Matrix6::Identity();
    }
  }
  Eigen::Matrix<double, 36, 1> rhs;
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 6; ++r) rhs(6 * c + r) = -m(r, c);
  const Eigen::Matrix<double, 36, 1> sol = l.fullPivLu().solve(rhs);
  Matrix6 p;
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 6; ++r) p(r, c) = sol(6 * c + r);
  return 0.5 * (p + p.transpose());
}

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e(r, c) = m(r, c);
  return e;
}

}  // namespace

void PidGains::validate() const {
  for (int k = 0; k < 3; ++k) {
    if (!(kp[k] > 0.0)) throw ConfigurationError("gains.kp must be positive");
    if (!(kd[k] > 0.0)) throw ConfigurationError("gains.kd must be positive");
    if (!(ki[k] >= 0.0)) throw ConfigurationError("gains.ki must be non-negative");
    if (ki[k] > 0.0 && !(integrator_limit > 0.0)) {
      throw ConfigurationError("gains.integrator_limit must be positive when ki > 0");
    }
  }
}

Vec3 attitude_error(const UnitQuaternion& q_current, const UnitQuaternion& q_target) {
  return (q_target.conjugate() * q_current).to_rotation_vector();
}

Vec3 pd_torque(const Vec3& error, const Vec3& rate, const PidGains& gains) {
  return -(hadamard(gains.kp, error) + hadamard(gains.kd, rate));
}

PidOutput pid_torque(const Vec3& error, const Vec3& rate, const Vec3& integral, double dt,
                     const PidGains& gains) {
  if (!(dt > 0.0)) throw DomainError("pid_torque: dt must be positive");
  PidOutput out;
  if (gains.ki == Vec3{}) {
    out.torque = pd_torque(error, rate, gains);
    out.integral = integral;
    return out;
  }
  const double lim = gains.integrator_limit;
  out.integral = clamp_abs(integral + error * dt, {lim, lim, lim});
  out.torque = pd_torque(error, rate, gains) - hadamard(gains.ki, out.integral);
  return out;
}

Matrix6 lqr_state_matrix() {
  Matrix6 a = Matrix6::Zero();
  a.topRightCorner<3, 3>().setIdentity();
  return a;
}

Eigen::Matrix<double, 6, 3> lqr_input_matrix(const InertiaSpec& inertia) {
  Eigen::Matrix<double, 6, 3> b = Eigen::Matrix<double, 6, 3>::Zero();
  b.bottomRows<3>() = to_eigen(inertia.inverse());
  return b;
}

double care_residual(const Matrix6& A, const Eigen::Matrix<double, 6, 3>& B, const Matrix6& Q,
                     const Eigen::Matrix3d& R, const Matrix6& P) {
  const Matrix6 res =
      A.transpose() * P + P * A - P * B * R.ldlt().solve(B.transpose() * P) + Q;
  return res.norm();
}

LqrResult lqr_gain(const LqrSpec& spec, int max_iterations) {
  if (!spec.Q.allFinite() || !spec.R.allFinite()) {
    throw ConfigurationError("lqr: weights must be finite");
  }
  const Matrix6 q = 0.5 * (spec.Q + spec.Q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix6> qe(q);
  if (qe.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, q.norm())) {
    throw ConfigurationError("lqr: Q must be positive semi-definite");
  }
  const Eigen::Matrix3d r = 0.5 * (spec.R + spec.R.transpose());
  Eigen::LLT<Eigen::Matrix3d> rl(r);
  if (rl.info() != Eigen::Success) throw ConfigurationError("lqr: R must be positive definite");

  const Matrix6 a = lqr_state_matrix();
  const Eigen::Matrix<double, 6, 3> b = lqr_input_matrix(spec.inertia);
  const Eigen::Matrix3d j = to_eigen(spec.inertia.matrix());

  LqrResult res;
  res.K.leftCols<3>() = j;
  res.K.rightCols<3>() = 2.0 * j;

  Matrix6 p_prev = Matrix6::Zero();
  for (int it = 1; it <= max_iterations; ++it) {
    const Matrix6 ac = a - b * res.K;
    const Matrix6 m = q + res.K.transpose() * r * res.K;
    res.P = solve_lyapunov(ac, m);
    res.K = rl.solve(b.transpose() * res.P);
    res.iterations = it;
    const double change = (res.P - p_prev).norm();
    p_prev = res.P;
    if (it > 1 && change <= 1e-14 * std::max(1.0, res.P.norm())) break;
  }

  res.residual = care_residual(a, b, q, r, res.P);
  const double scale = std::max(1.0, q.norm() + res.P.norm());
  if (!(res.residual <= 1e-9 * scale)) {
    throw SynthesisError(res.residual, "lqr: Riccati iteration did not converge");
  }

  Eigen::EigenSolver<Matrix6> cl(a - b * res.K);
  res.max_closed_loop_real = cl.eigenvalues().real().maxCoeff();
  if (!(res.max_closed_loop_real < 0.0)) {
    throw SynthesisError(res.residual, "lqr: closed loop is not Hurwitz");
  }
  return res;
}

Vec3 lqr_torque(const Matrix3x6& K, const Vec3& error, const Vec3& rate) {
  Eigen::Matrix<double, 6, 1> x;
  x << error.x, error.y, error.z, rate.x, rate.y, rate.z;
  const Eigen::Vector3d u = -K * x;
  return {u(0), u(1), u(2)};
}

Vec3 momentum_dump_command(const Vec3& wheel_momentum, const Vec3& b_body, double gain,
                           const MagnetorquerSpec& spec) {
  const double b2 = b_body.squared_norm();
  if (!(b2 > 0.0)) throw DomainError("momentum_dump_command: degenerate (zero) magnetic field");
  const double lim = spec.max_dipole;
  return clamp_abs((gain / b2) * cross(wheel_momentum, b_body), {lim, lim, lim});
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::NominalPointing: return "NOMINAL_POINTING";
    case Mode::MomentumDump: return "MOMENTUM_DUMP";
    case Mode::SafeHold: return "SAFE_HOLD";
  }
  return "UNKNOWN";
}

void SupervisorConfig::validate() const {
  if (!(rate_limit > 0.0)) throw ConfigurationError("supervisor.rate_limit must be positive");
  if (!(dump_exit_fraction >= 0.0 && dump_exit_fraction < dump_enter_fraction &&
        dump_enter_fraction <= 1.0)) {
    throw ConfigurationError("supervisor: need 0 <= dump_exit_fraction < dump_enter_fraction <= 1");
  }
}

ControlMode mode_supervisor(const ControlMode& current, const SupervisorTelemetry& t,
                            const SupervisorConfig& config) {
  auto enter = [&](Mode m, std::string reason) { return ControlMode{m, t.epoch, std::move(reason)}; };

  if (current.mode == Mode::SafeHold) {
    if (t.resume_nominal_command) return enter(Mode::NominalPointing, "ground_command");
    return current;
  }
  if (t.wheel_fault) return enter(Mode::SafeHold, "wheel_fault");
  if (t.estimator_diverged) return enter(Mode::SafeHold, "estimator_divergence");
  if (t.rate_magnitude > config.rate_limit) return enter(Mode::SafeHold, "rate_limit");

  if (current.mode == Mode::NominalPointing &&
      t.wheel_momentum_fraction >= config.dump_enter_fraction) {
    return enter(Mode::MomentumDump, "wheel_momentum_high");
  }
  if (current.mode == Mode::MomentumDump &&
      t.wheel_momentum_fraction <= config.dump_exit_fraction) {
    return enter(Mode::NominalPointing, "wheel_momentum_unloaded");
  }
  return current;
}

Vec3 safe_hold_torque(const Vec3& sun_body, const Vec3& omega, const SafeHoldGains& gains) {
  const Vec3 s = sun_body.normalized();
  const Vec3 tau = gains.kp * cross(gains.panel_axis.normalized(), s) - gains.kd * omega;
  const double lim = gains.max_torque;
  return clamp_abs(tau, {lim, lim, lim});
}

UnitQuaternion nadir_pointing_target(const StateVector& sv, const Vec3& sun_direction) {
  const Vec3 z = (-sv.position).normalized();
  Vec3 x = sun_direction - dot(sun_direction, z) * z;
  if (x.norm() < 1e-6 * std::max(1.0, sun_direction.norm())) {
    x = sv.velocity - dot(sv.velocity, z) * z;
  }
  x = x.normalized();
  const Vec3 y = cross(z, x);
  return UnitQuaternion::from_matrix(Mat3::from_columns(x, y, z));
}

}  // namespace gpsim
