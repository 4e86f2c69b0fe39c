#include <gtest/gtest.h>

#include <cmath>

#include <random>

#include "control_runs.hpp"
#include "test_support.hpp"
#include "gpsim/control.hpp"
#include "gpsim/error.hpp"

using namespace gpsim;

TEST(AttitudeError, ZeroWhenAlignedAndSignedOtherwise) {
  const auto q = UnitQuaternion::from_axis_angle({1, 2, 3}, 0.5);
  EXPECT_LT(attitude_error(q, q).norm(), 1e-15);
  const auto target = UnitQuaternion::identity();
  const auto cur = UnitQuaternion::from_axis_angle(Vec3::unit_y(), 0.2);
  const Vec3 e = attitude_error(cur, target);
  EXPECT_NEAR(e.y, 0.2, 1e-15);
}

TEST(AttitudeError, ShortestPathNearHalfTurn) {
  const auto cur = UnitQuaternion::from_axis_angle(Vec3::unit_z(), kPi + 0.1);
  EXPECT_NEAR(attitude_error(cur, {}).norm(), kPi - 0.1, 1e-12);
}

TEST(Pd, TorqueSigns) {
  PidGains g;
  g.kp = {2, 3, 4};
  g.kd = {5, 6, 7};
  const Vec3 t = pd_torque({0.1, -0.1, 0.0}, {0.0, 0.0, 0.01}, g);
  EXPECT_DOUBLE_EQ(t.x, -0.2);
  EXPECT_DOUBLE_EQ(t.y, 0.3);
  EXPECT_DOUBLE_EQ(t.z, -0.07);
}

TEST(Pid, IntegratorClamps) {
  PidGains g;
  g.ki = {1, 1, 1};
  g.integrator_limit = 0.05;
  const auto out = pid_torque({1.0, -1.0, 0.0}, {}, {}, 1.0, g);
  EXPECT_DOUBLE_EQ(out.integral.x, 0.05);
  EXPECT_DOUBLE_EQ(out.integral.y, -0.05);
  EXPECT_DOUBLE_EQ(out.torque.x, -1.0 - 0.05);
}

TEST(PdSlew, CriticallyDampedMatchesScalarOracle) {
  const double theta0 = 10.0 * kDeg;
  const double wn = 0.1;
  const auto r = test::run_pd_slew(theta0, 100.0, wn, 6.0 / wn, 200.0);
  EXPECT_LT(r.max_oracle_dev, 0.02 * theta0);
  EXPECT_LT(r.overshoot, 0.1 * kDeg);
  EXPECT_LT(r.settled_error, 0.2 * kDeg);
}

TEST(Pid, NullsConstantDisturbance) {
  const auto r = test::run_pid_disturbance(1e-5, 4000.0);
  EXPECT_GT(r.pd_offset, 0.01 * kDeg);  // PD alone would not meet the bound
  EXPECT_LT(r.final_error, 0.01 * kDeg);
}

TEST(Lqr, DoubleIntegratorGain) {
  LqrSpec spec;
  const auto r = lqr_gain(spec);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.K(i, i), 1.0, 1e-6);
    EXPECT_NEAR(r.K(i, i + 3), std::sqrt(3.0), 1e-6);
  }
  EXPECT_LT(r.residual, 1e-9);
  EXPECT_LT(r.max_closed_loop_real, 0.0);
}

TEST(Lqr, ScalarOracleForGeneralWeights) {
  // per axis J theta'' = u with cost q1 theta^2 + q2 w^2 + r u^2 has the closed form
  // k1 = sqrt(q1 / r), k2 = sqrt(q2 / r + 2 J k1)
  LqrSpec spec;
  spec.inertia = InertiaSpec::diagonal(200.0, 300.0, 250.0);
  spec.Q.diagonal() << 4.0, 4.0, 4.0, 100.0, 100.0, 100.0;
  spec.R = 0.01 * Eigen::Matrix3d::Identity();
  const auto r = lqr_gain(spec);
  const double j[3] = {200.0, 300.0, 250.0};
  for (int i = 0; i < 3; ++i) {
    const double k1 = std::sqrt(4.0 / 0.01);
    const double k2 = std::sqrt(100.0 / 0.01 + 2.0 * j[i] * k1);
    EXPECT_NEAR(r.K(i, i), k1, 1e-6 * k1);
    EXPECT_NEAR(r.K(i, i + 3), k2, 1e-6 * k2);
  }
  EXPECT_LT(r.residual, 1e-9);
}

TEST(Lqr, InvalidWeightsThrow) {
  LqrSpec spec;
  spec.R = -Eigen::Matrix3d::Identity();
  EXPECT_THROW((void)lqr_gain(spec), ConfigurationError);
  LqrSpec nan_spec;
  nan_spec.Q(0, 0) = std::nan("");
  EXPECT_THROW((void)lqr_gain(nan_spec), ConfigurationError);
}

TEST(MomentumDump, CommandOpposesStoredMomentum) {
  const MagnetorquerSpec spec{200.0};
  for (int k = 0; k < 200; ++k) {
    const Vec3 h{std::sin(k * 0.7), std::cos(k * 1.3), std::sin(k * 0.1 + 1.0)};
    const Vec3 b = Vec3{std::cos(k * 0.3), 0.4, std::sin(k * 0.9)} * 4e-7;
    const Vec3 m = momentum_dump_command(h, b, 1e-3, spec);
    EXPECT_LE(dot(h, magnetorquer_torque(m, b, spec)), 0.0);
    EXPECT_LE(std::abs(m.x), 200.0);
  }
  EXPECT_THROW((void)momentum_dump_command({1, 0, 0}, {}, 1e-4, spec), DomainError);
}

TEST(MomentumDump, UnloadsWithinOneOrbit) {
  const double period = orbital_period(26560e3);
  const auto r = test::run_momentum_dump(1.5e-4, period);
  EXPECT_NEAR(r.initial_fraction, 0.8, 1e-12);
  EXPECT_LT(r.final_fraction, 0.2);
  EXPECT_LE(r.max_h_dot_tau, 0.0);
  EXPECT_EQ(r.monotone_violations, 0);
}

TEST(Supervisor, TransitionsAndLatching) {
  ControlMode m;
  SupervisorTelemetry t;
  t.epoch = 10.0;
  t.wheel_momentum_fraction = 0.85;
  m = mode_supervisor(m, t);
  EXPECT_EQ(m.mode, Mode::MomentumDump);
  EXPECT_EQ(m.entry_epoch, 10.0);
  t.wheel_momentum_fraction = 0.5;
  EXPECT_EQ(mode_supervisor(m, t).mode, Mode::MomentumDump);
  t.wheel_momentum_fraction = 0.1;
  m = mode_supervisor(m, t);
  EXPECT_EQ(m.mode, Mode::NominalPointing);

  t.rate_magnitude = 3.0 * kDeg;
  m = mode_supervisor(m, t);
  EXPECT_EQ(m.mode, Mode::SafeHold);
  EXPECT_EQ(m.reason, "rate_limit");
  t.rate_magnitude = 0.0;
  EXPECT_EQ(mode_supervisor(m, t).mode, Mode::SafeHold);
  t.resume_nominal_command = true;
  EXPECT_EQ(mode_supervisor(m, t).mode, Mode::NominalPointing);
}

TEST(Supervisor, FaultsForceSafeHoldFromAnyMode) {
  for (Mode start : {Mode::NominalPointing, Mode::MomentumDump}) {
    SupervisorTelemetry t;
    t.wheel_fault = true;
    EXPECT_EQ(mode_supervisor({start, 0.0, ""}, t).reason, "wheel_fault");
    t.wheel_fault = false;
    t.estimator_diverged = true;
    EXPECT_EQ(mode_supervisor({start, 0.0, ""}, t).mode, Mode::SafeHold);
  }
}

TEST(SafeHold, DampsTumbleAndPointsPanels) {
  const auto r = test::run_safe_hold(5.0 * kDeg, 1500.0);
  EXPECT_LT(r.final_rate, 0.1 * kDeg);
  EXPECT_LT(r.final_sun_angle, 10.0 * kDeg);
}

TEST(NadirTarget, FrameGeometry) {
  const StateVector sv{{26560e3, 0, 0}, {0, 3874.0, 0}, 0};
  const Vec3 sun = Vec3{0.2, 0.5, 0.8}.normalized();
  const auto q = nadir_pointing_target(sv, sun);
  const Vec3 z = quat_rotate(q, Vec3::unit_z());
  const Vec3 x = quat_rotate(q, Vec3::unit_x());
  EXPECT_LT((z - Vec3{-1, 0, 0}).norm(), 1e-12);
  EXPECT_NEAR(dot(x, Vec3{0, 0.5, 0.8}.normalized()), 1.0, 1e-12);
  // sun along nadir falls back to velocity
  const auto q2 = nadir_pointing_target(sv, Vec3{-1, 0, 0});
  EXPECT_LT((quat_rotate(q2, Vec3::unit_x()) - Vec3{0, 1, 0}).norm(), 1e-12);
}

// ---- properties

TEST(PdProperty, TorqueIsOddInErrorAndRate) {
  std::mt19937_64 rng(21);
  PidGains g;
  g.kp = {3.0, 3.75, 2.25};
  g.kd = {120.0, 150.0, 90.0};
  for (int k = 0; k < 200; ++k) {
    const Vec3 e = test::random_vec(rng, 0.1);
    const Vec3 w = test::random_vec(rng, 0.01);
    const Vec3 a = pd_torque(e, w, g);
    const Vec3 b = pd_torque(-e, -w, g);
    EXPECT_LT((a + b).norm(), 1e-15 * (1.0 + a.norm()));
    EXPECT_EQ(pd_torque({}, {}, g), Vec3{});
  }
}

namespace {

// Random inertia with principal moments in [800, 1500] and a random frame.
InertiaSpec random_inertia(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(800.0, 1500.0);
  const Mat3 r = test::rodrigues(test::random_vec(rng), u(rng) * 1e-3 * kPi);
  Mat3 j = r * Mat3::diagonal(u(rng), u(rng), u(rng)) * r.transpose();
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) j(b, a) = j(a, b);
  return InertiaSpec(j);
}

}  // namespace

TEST(LqrProperty, ClosedLoopHurwitzForRandomInertias) {
  std::mt19937_64 rng(404);
  for (int k = 0; k < 100; ++k) {
    LqrSpec spec;
    spec.inertia = random_inertia(rng);
    spec.Q.diagonal() << 10.0, 10.0, 10.0, 1e4, 1e4, 1e4;
    const auto r = lqr_gain(spec);
    const Matrix6 acl = lqr_state_matrix() - lqr_input_matrix(spec.inertia) * r.K;
    const Eigen::VectorXcd eig = acl.eigenvalues();
    for (int i = 0; i < 6; ++i) EXPECT_LT(eig(i).real(), 0.0) << "case " << k;
    EXPECT_LT(r.max_closed_loop_real, 0.0);
    EXPECT_LT(r.residual, 1e-9 * (1.0 + r.P.norm()));
  }
}

TEST(LqrProperty, NonlinearSlewFromTwentyDegreesSettles) {
  std::mt19937_64 rng(9);
  const InertiaSpec inertia = InertiaSpec::diagonal(1200.0, 1500.0, 900.0);
  LqrSpec spec;
  spec.inertia = inertia;
  spec.Q.diagonal() << 100.0, 100.0, 100.0, 1e4, 1e4, 1e4;
  const auto gain = lqr_gain(spec);
  for (int trial = 0; trial < 5; ++trial) {
    RigidBodyState s;
    s.q = UnitQuaternion::from_axis_angle(test::random_vec(rng), 20.0 * kDeg);
    const double dt = 0.1;
    for (int k = 0; k < 6000; ++k) {
      const Vec3 u = lqr_torque(gain.K, attitude_error(s.q, {}), s.omega);
      s = step_attitude(s, inertia, {}, u, {}, dt).state;
    }
    EXPECT_LT(attitude_error(s.q, {}).norm(), 0.1 * kDeg) << "trial " << trial;
  }
}

TEST(MomentumDumpProperty, NoCommandWithoutUsefulMomentum) {
  const MagnetorquerSpec spec{200.0};
  std::mt19937_64 rng(77);
  for (int k = 0; k < 50; ++k) {
    const Vec3 b = test::random_vec(rng, 3e-7);
    EXPECT_EQ(momentum_dump_command({}, b, 1e-3, spec).norm(), 0.0);
    const Vec3 along = 0.7 * b / b.norm();
    EXPECT_LT(momentum_dump_command(along, b, 1e-3, spec).norm(), 1e-9);
    EXPECT_LT(magnetorquer_torque(momentum_dump_command(along, b, 1e-3, spec), b, spec).norm(), 1e-18);
  }
}
