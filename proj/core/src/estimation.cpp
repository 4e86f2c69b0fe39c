#include "gpsim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpsim/error.hpp"

namespace gpsim {

namespace {

// measurement covariances are floored here so a zero-sigma sensor stays invertible
constexpr double kMinVariance = 1e-30;

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e(r, c) = m(r, c);
  return e;
}

Eigen::Vector3d to_eigen(const Vec3& v) { return {v.x, v.y, v.z}; }

Vec3 gaussian_vec(std::mt19937_64& rng, double sigma) {
  if (sigma == 0.0) return {};
  std::normal_distribution<double> n(0.0, sigma);
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return {x, y, z};
}

Eigen::Matrix3d isotropic(double sigma) {
  return std::max(sigma * sigma, kMinVariance) * Eigen::Matrix3d::Identity();
}

void require_nonzero(const Vec3& v, const char* name) {
  if (!(v.norm() > 0.0) || !v.all_finite()) {
    throw ConfigurationError(std::string("reference vector '") + name + "' must be non-zero");
  }
}

}  // namespace

void SensorSuite::validate() const {
  auto nonneg = [](double v, const char* n) {
    if (!(v >= 0.0)) throw ConfigurationError(std::string("sensors.") + n + " must be >= 0");
  };
  auto positive = [](double v, const char* n) {
    if (!(v > 0.0)) throw ConfigurationError(std::string("sensors.") + n + " must be > 0");
  };
  nonneg(star_tracker_sigma, "star_tracker_sigma");
  nonneg(gyro_noise_sigma, "gyro_noise_sigma");
  nonneg(gyro_bias_walk_sigma, "gyro_bias_walk_sigma");
  nonneg(sun_sensor_sigma, "sun_sensor_sigma");
  nonneg(earth_sensor_sigma, "earth_sensor_sigma");
  nonneg(magnetometer_sigma, "magnetometer_sigma");
  positive(star_tracker_rate, "star_tracker_rate");
  positive(gyro_rate, "gyro_rate");
  positive(sun_sensor_rate, "sun_sensor_rate");
  positive(earth_sensor_rate, "earth_sensor_rate");
  positive(magnetometer_rate, "magnetometer_rate");
  if (!gyro_initial_bias.all_finite()) throw ConfigurationError("sensors.gyro_initial_bias must be finite");
}

const char* to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::StarTracker: return "star_tracker";
    case MeasurementKind::SunVector: return "sun_vector";
    case MeasurementKind::EarthVector: return "earth_vector";
    case MeasurementKind::MagVector: return "mag_vector";
  }
  return "unknown";
}

std::vector<Measurement> simulate_measurements(const RigidBodyState& truth,
                                               const SensorSuite& suite,
                                               const ReferenceVectors& refs,
                                               std::mt19937_64& rng) {
  require_nonzero(refs.sun, "sun");
  require_nonzero(refs.field, "field");
  require_nonzero(refs.nadir, "nadir");

  std::vector<Measurement> out;
  out.reserve(4);

  Measurement st;
  st.kind = MeasurementKind::StarTracker;
  st.attitude = truth.q * UnitQuaternion::from_rotation_vector(
                              gaussian_vec(rng, suite.star_tracker_sigma));
  st.covariance = isotropic(suite.star_tracker_sigma);
  st.epoch = truth.epoch;
  out.push_back(st);

  auto unit_sensor = [&](MeasurementKind kind, const Vec3& ref, double sigma) {
    Measurement m;
    m.kind = kind;
    m.reference = ref.normalized();
    const Vec3 body = quat_rotate_inverse(truth.q, m.reference);
    m.vector = sigma == 0.0 ? body : (body + gaussian_vec(rng, sigma)).normalized();
    m.covariance = isotropic(sigma);
    m.epoch = truth.epoch;
    return m;
  };
  out.push_back(unit_sensor(MeasurementKind::SunVector, refs.sun, suite.sun_sensor_sigma));
  out.push_back(unit_sensor(MeasurementKind::EarthVector, refs.nadir, suite.earth_sensor_sigma));

  Measurement mag;
  mag.kind = MeasurementKind::MagVector;
  mag.reference = refs.field;
  mag.vector = quat_rotate_inverse(truth.q, refs.field) + gaussian_vec(rng, suite.magnetometer_sigma);
  mag.covariance = isotropic(suite.magnetometer_sigma);
  mag.epoch = truth.epoch;
  out.push_back(mag);
  return out;
}

Vec3 GyroModel::sample(const Vec3& omega, double dt, std::mt19937_64& rng) {
  const Vec3 reading = omega + bias_ + gaussian_vec(rng, suite_.gyro_noise_sigma);
  bias_ += gaussian_vec(rng, suite_.gyro_bias_walk_sigma * std::sqrt(dt));
  return reading;
}

EstimatorState EstimatorState::initial(const UnitQuaternion& q0, double epoch, const Vec3& bias0,
                                       double attitude_sigma, double bias_sigma) {
  EstimatorState s;
  s.q_hat = q0;
  s.bias_hat = bias0;
  s.P.setZero();
  s.P.topLeftCorner<3, 3>() = attitude_sigma * attitude_sigma * Eigen::Matrix3d::Identity();
  s.P.bottomRightCorner<3, 3>() = bias_sigma * bias_sigma * Eigen::Matrix3d::Identity();
  s.epoch = epoch;
  return s;
}

Matrix6 process_noise(const SensorSuite& suite, double dt) {
  Matrix6 q = Matrix6::Zero();
  const double sv = suite.gyro_noise_sigma * dt;
  q.topLeftCorner<3, 3>() = sv * sv * Eigen::Matrix3d::Identity();
  q.bottomRightCorner<3, 3>() =
      suite.gyro_bias_walk_sigma * suite.gyro_bias_walk_sigma * dt * Eigen::Matrix3d::Identity();
  return q;
}

EstimatorState ekf_predict(const EstimatorState& est, const Vec3& gyro_reading, double dt,
                           const Matrix6& process_noise) {
  if (!(dt > 0.0)) throw DomainError("ekf_predict: dt must be positive");
  const Vec3 rate = gyro_reading - est.bias_hat;
  const UnitQuaternion dq = UnitQuaternion::from_rotation_vector(rate * dt);

  EstimatorState out = est;
  out.q_hat = est.q_hat * dq;
  out.epoch = est.epoch + dt;

  Matrix6 f = Matrix6::Identity();
  f.topLeftCorner<3, 3>() = to_eigen(dq.to_matrix().transpose());
  f.topRightCorner<3, 3>() = -dt * Eigen::Matrix3d::Identity();
  out.P = f * est.P * f.transpose() + process_noise;
  out.P = 0.5 * (out.P + out.P.transpose()).eval();
  return out;
}

UpdateResult ekf_update(const EstimatorState& est, const Measurement& meas, double gate) {
  Eigen::Matrix<double, 3, 6> h = Eigen::Matrix<double, 3, 6>::Zero();
  Eigen::Vector3d nu;
  if (meas.kind == MeasurementKind::StarTracker) {
    nu = to_eigen(attitude_estimation_error(est.q_hat, meas.attitude));
    h.leftCols<3>().setIdentity();
  } else {
    const Vec3 predicted = quat_rotate_inverse(est.q_hat, meas.reference);
    nu = to_eigen(meas.vector - predicted);
    h.leftCols<3>() = to_eigen(Mat3::skew(predicted));
  }

  const Eigen::Matrix3d& r = meas.covariance;
  const Eigen::Matrix3d s = h * est.P * h.transpose() + r;
  Eigen::LLT<Eigen::Matrix3d> llt(s);
  if (llt.info() != Eigen::Success || !s.allFinite()) {
    throw NumericalError("ekf_update: innovation covariance is not positive definite");
  }

  UpdateResult res;
  res.innovation = nu;
  res.mahalanobis = std::sqrt(std::max(0.0, nu.dot(llt.solve(nu))));
  if (res.mahalanobis > gate) {
    res.state = est;
    res.rejected = true;
    return res;
  }

  // K = P H^T S^-1
  const Eigen::Matrix<double, 6, 3> k = llt.solve(h * est.P).transpose();
  const Vector6 dx = k * nu;

  EstimatorState out = est;
  out.q_hat = est.q_hat * UnitQuaternion::from_rotation_vector({dx(0), dx(1), dx(2)});
  out.bias_hat = est.bias_hat + Vec3{dx(3), dx(4), dx(5)};
  const Matrix6 ikh = Matrix6::Identity() - k * h;
  out.P = ikh * est.P * ikh.transpose() + k * r * k.transpose();
  out.P = 0.5 * (out.P + out.P.transpose()).eval();
  out.epoch = meas.epoch;
  res.state = out;
  return res;
}

LinearEstimate kalman_update(const Eigen::VectorXd& x, const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& z, const Eigen::MatrixXd& H,
                             const Eigen::MatrixXd& R) {
  const Eigen::MatrixXd s = H * P * H.transpose() + R;
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("kalman_update: innovation covariance is not positive definite");
  }
  const Eigen::MatrixXd k = llt.solve(H * P).transpose();
  LinearEstimate out;
  out.x = x + k * (z - H * x);
  const Eigen::MatrixXd ikh = Eigen::MatrixXd::Identity(P.rows(), P.cols()) - k * H;
  out.P = ikh * P * ikh.transpose() + k * R * k.transpose();
  return out;
}

bool covariance_is_valid(const Matrix6& P) {
  if (!P.allFinite()) return false;
  const double scale = std::max(P.cwiseAbs().maxCoeff(), 1e-300);
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(0.5 * (P + P.transpose()));
  return eig.eigenvalues().minCoeff() >= -1e-12 * scale;
}

double nees(const EstimatorState& est, const UnitQuaternion& q_true, const Vec3& bias_true) {
  Vector6 e;
  e.head<3>() = to_eigen(attitude_estimation_error(est.q_hat, q_true));
  e.tail<3>() = to_eigen(bias_true - est.bias_hat);
  return e.dot(est.P.ldlt().solve(e));
}

Vec3 attitude_estimation_error(const UnitQuaternion& q_hat, const UnitQuaternion& q_true) {
  return (q_hat.conjugate() * q_true).to_rotation_vector();
}

}  // namespace gpsim
