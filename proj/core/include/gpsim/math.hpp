#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace gpsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDeg = std::numbers::pi / 180.0;

constexpr double deg2rad(double deg) { return deg * kDeg; }
constexpr double rad2deg(double rad) { return rad / kDeg; }

/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);
/// Wraps an angle into [-pi, pi).
double wrap_pi(double angle);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  static constexpr Vec3 zero() { return {}; }
  static constexpr Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
  static constexpr Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
  static constexpr Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double squared_norm() const { return x * x + y * y + z * z; }
  Vec3 normalized() const;
  bool all_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
/// Componentwise product.
constexpr Vec3 hadamard(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
/// Componentwise clamp to [-limit_i, limit_i].
Vec3 clamp_abs(const Vec3& v, const Vec3& limit);
/// Angle between two non-zero vectors, robust near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// 3x3 matrix stored row-major.
struct Mat3 {
  std::array<double, 9> m{};

  static constexpr Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static constexpr Mat3 diagonal(double a, double b, double c) {
    return Mat3{{a, 0, 0, 0, b, 0, 0, 0, c}};
  }
  static constexpr Mat3 diagonal(const Vec3& d) { return diagonal(d.x, d.y, d.z); }
  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return Mat3{{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }
  /// Cross-product matrix: skew(a) * b == cross(a, b).
  static constexpr Mat3 skew(const Vec3& a) {
    return Mat3{{0, -a.z, a.y, a.z, 0, -a.x, -a.y, a.x, 0}};
  }

  constexpr double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
  constexpr double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

  constexpr Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
  constexpr Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

  constexpr Mat3 transpose() const {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  constexpr double determinant() const {
    const auto& a = m;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
  constexpr double trace() const { return m[0] + m[4] + m[8]; }
  /// Throws SingularityError when |det| is below `tol` times the entry scale cubed.
  Mat3 inverse(double tol = 1e-14) const;
  bool all_finite() const;

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
          a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
          a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}
constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += a(r, j) * b(j, k);
      c(r, k) = s;
    }
  return c;
}
constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (std::size_t i = 0; i < 9; ++i) c.m[i] = a.m[i] + b.m[i];
  return c;
}
constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (std::size_t i = 0; i < 9; ++i) c.m[i] = a.m[i] - b.m[i];
  return c;
}
constexpr Mat3 operator*(double s, const Mat3& a) {
  Mat3 c;
  for (std::size_t i = 0; i < 9; ++i) c.m[i] = s * a.m[i];
  return c;
}

/// Raw quaternion (scalar first). Used for rates and intermediate algebra;
/// attitudes are carried as UnitQuaternion.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 vec() const { return {x, y, z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  constexpr Quat conjugate() const { return {w, -x, -y, -z}; }

  friend constexpr bool operator==(const Quat&, const Quat&) = default;
};

/// Hamilton product, scalar-first.
constexpr Quat hamilton(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
constexpr Quat operator+(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
constexpr double dot(const Quat& a, const Quat& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Unit quaternion representing an attitude.
///
/// Convention used everywhere in gpsim: scalar-first Hamilton algebra, and an
/// attitude quaternion q maps body-frame coordinates to inertial-frame
/// coordinates, v_I = q (x) v_B (x) q*. Composition follows the Hamilton
/// product: rotate(q1 * q2, v) == rotate(q1, rotate(q2, v)), i.e. q2 is
/// applied first. Stored values are always normalized and sign-canonical
/// (w >= 0), so q and -q compare equal after construction.
class UnitQuaternion {
 public:
  constexpr UnitQuaternion() = default;
  /// Normalizes and canonicalizes; throws DomainError for a zero or non-finite input.
  UnitQuaternion(double w, double x, double y, double z);
  explicit UnitQuaternion(const Quat& q) : UnitQuaternion(q.w, q.x, q.y, q.z) {}

  static UnitQuaternion identity() { return {}; }
  static UnitQuaternion from_axis_angle(const Vec3& axis, double angle);
  /// Exponential map of a rotation vector (axis * angle).
  static UnitQuaternion from_rotation_vector(const Vec3& rv);
  /// From a proper orthogonal matrix R with v_I = R v_B.
  static UnitQuaternion from_matrix(const Mat3& r);

  double w() const { return q_.w; }
  double x() const { return q_.x; }
  double y() const { return q_.y; }
  double z() const { return q_.z; }
  const Quat& raw() const { return q_; }

  UnitQuaternion conjugate() const;
  UnitQuaternion inverse() const { return conjugate(); }
  /// Rotation matrix R with rotate(v) == R * v.
  Mat3 to_matrix() const;
  /// Logarithm map, shortest path: returns axis * angle with angle in [0, pi].
  Vec3 to_rotation_vector() const;
  double angle() const;

  friend bool operator==(const UnitQuaternion&, const UnitQuaternion&) = default;

 private:
  Quat q_{};
};

/// Hamilton product q1 (x) q2, renormalized and sign-canonical.
UnitQuaternion quat_multiply(const UnitQuaternion& q1, const UnitQuaternion& q2);
inline UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
  return quat_multiply(a, b);
}
/// q (x) (0, v) (x) q*.
Vec3 quat_rotate(const UnitQuaternion& q, const Vec3& v);
/// q* (x) (0, v) (x) q, the inverse rotation.
Vec3 quat_rotate_inverse(const UnitQuaternion& q, const Vec3& v);
/// Rotation angle separating two attitudes, in [0, pi].
double angle_between(const UnitQuaternion& a, const UnitQuaternion& b);

}  // namespace gpsim
