#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gpsim/attitude.hpp"
#include "gpsim/math.hpp"

namespace gpsim {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Noise and rate characteristics of the attitude sensor set.
///
/// Gyro noise is a per-sample white noise on the rate reading (rad/s); the
/// bias performs a random walk with density gyro_bias_walk_sigma
/// (rad/s/sqrt(s)).
struct SensorSuite {
  double star_tracker_sigma = 4.848e-6;  // rad per axis (1 arcsec)
  double gyro_noise_sigma = 1e-6;        // rad/s
  double gyro_bias_walk_sigma = 1e-9;    // rad/s/sqrt(s)
  Vec3 gyro_initial_bias{2e-6, -3e-6, 1.5e-6};
  double sun_sensor_sigma = 0.5 * kDeg;  // rad
  double earth_sensor_sigma = 0.5 * kDeg;
  double magnetometer_sigma = 5e-9;      // T
  double star_tracker_rate = 1.0;        // Hz
  double gyro_rate = 10.0;
  double sun_sensor_rate = 1.0;
  double earth_sensor_rate = 1.0;
  double magnetometer_rate = 1.0;

  void validate() const;
  friend bool operator==(const SensorSuite&, const SensorSuite&) = default;
};

enum class MeasurementKind { StarTracker, SunVector, EarthVector, MagVector };

const char* to_string(MeasurementKind kind);

/// One absolute attitude observation z_k with its noise covariance R.
/// Star-tracker measurements carry `attitude`; vector sensors carry
/// `vector` (body frame) and the matching inertial `reference`.
struct Measurement {
  MeasurementKind kind = MeasurementKind::StarTracker;
  UnitQuaternion attitude;
  Vec3 vector;
  Vec3 reference;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();
  double epoch = 0.0;
};

/// Inertial reference directions available to the vector sensors.
struct ReferenceVectors {
  Vec3 sun;     // unit vector toward the sun
  Vec3 field;   // geomagnetic field, T
  Vec3 nadir;   // unit vector toward the Earth center
};

/// Noisy star tracker and vector-sensor samples for the current truth.
/// All sigmas zero yields the exact projections. Throws ConfigurationError
/// for a zero reference vector.
std::vector<Measurement> simulate_measurements(const RigidBodyState& truth,
                                               const SensorSuite& suite,
                                               const ReferenceVectors& refs,
                                               std::mt19937_64& rng);

/// Rate gyro with a random-walk bias. Owns its bias state.
class GyroModel {
 public:
  explicit GyroModel(const SensorSuite& suite) : suite_(suite), bias_(suite.gyro_initial_bias) {}
  GyroModel(const SensorSuite& suite, const Vec3& initial_bias) : suite_(suite), bias_(initial_bias) {}

  /// Returns omega + bias + noise, then advances the bias by dt.
  Vec3 sample(const Vec3& omega, double dt, std::mt19937_64& rng);
  const Vec3& bias() const { return bias_; }

 private:
  SensorSuite suite_;
  Vec3 bias_;
};

/// Multiplicative error-state estimate: attitude, gyro bias and the 6x6
/// covariance of (attitude error angles in body axes, bias error).
struct EstimatorState {
  UnitQuaternion q_hat;
  Vec3 bias_hat;
  Matrix6 P = Matrix6::Identity();
  double epoch = 0.0;

  /// Default prior: (10 deg)^2 attitude, (1 deg/hr)^2 bias.
  static EstimatorState initial(const UnitQuaternion& q0, double epoch = 0.0,
                                const Vec3& bias0 = {}, double attitude_sigma = 10.0 * kDeg,
                                double bias_sigma = kDeg / 3600.0);
};

/// Discrete process noise matching the sampled gyro model over dt:
/// attitude block (sigma_v dt)^2, bias block sigma_u^2 dt.
Matrix6 process_noise(const SensorSuite& suite, double dt);

/// Propagates q_hat with the bias-corrected gyro rate held over dt and
/// P <- F P F^T + Q.
EstimatorState ekf_predict(const EstimatorState& est, const Vec3& gyro_reading, double dt,
                           const Matrix6& process_noise);

struct UpdateResult {
  EstimatorState state;
  Eigen::Vector3d innovation = Eigen::Vector3d::Zero();
  double mahalanobis = 0.0;  // sqrt(nu^T S^-1 nu)
  bool rejected = false;
};

inline constexpr double kDefaultInnovationGate = 5.0;

/// Measurement update. The error-state correction is the linear Kalman
/// step x+ = x- + K (z - H x-) with prior x- = 0, applied multiplicatively
/// to q_hat and additively to the bias; covariance in Joseph form.
/// Innovations whose Mahalanobis distance exceeds `gate` are rejected and
/// leave the state untouched. Throws NumericalError if H P H^T + R is not
/// invertible.
UpdateResult ekf_update(const EstimatorState& est, const Measurement& meas,
                        double gate = kDefaultInnovationGate);

/// Generic linear Kalman measurement update in Joseph form.
struct LinearEstimate {
  Eigen::VectorXd x;
  Eigen::MatrixXd P;
};
LinearEstimate kalman_update(const Eigen::VectorXd& x, const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& z, const Eigen::MatrixXd& H,
                             const Eigen::MatrixXd& R);

/// True when P is symmetric (1e-9 relative) and its smallest eigenvalue is >= -1e-12 scale.
bool covariance_is_valid(const Matrix6& P);

/// Normalized estimation error squared of the full 6-state error.
double nees(const EstimatorState& est, const UnitQuaternion& q_true, const Vec3& bias_true);

/// Attitude error of the estimate in body axes: log(q_hat^-1 (x) q_true).
Vec3 attitude_estimation_error(const UnitQuaternion& q_hat, const UnitQuaternion& q_true);

}  // namespace gpsim
