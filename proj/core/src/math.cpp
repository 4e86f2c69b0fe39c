#include "gpsim/math.hpp"

#include <algorithm>

#include "gpsim/error.hpp"

namespace gpsim {

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  // fmod of a tiny negative can round up to exactly 2pi
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double wrap_pi(double angle) {
  double a = wrap_two_pi(angle + kPi) - kPi;
  return a;
}

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

Vec3 clamp_abs(const Vec3& v, const Vec3& limit) {
  return {std::clamp(v.x, -limit.x, limit.x), std::clamp(v.y, -limit.y, limit.y),
          std::clamp(v.z, -limit.z, limit.z)};
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b));
}

Mat3 Mat3::inverse(double tol) const {
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  const double det = determinant();
  if (!(scale > 0.0) || !(std::abs(det) > tol * scale * scale * scale)) {
    throw SingularityError("matrix is singular");
  }
  const auto& a = m;
  Mat3 inv;
  inv.m = {a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
           a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
           a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]};
  for (double& v : inv.m) v /= det;
  return inv;
}

bool Mat3::all_finite() const {
  return std::all_of(m.begin(), m.end(), [](double v) { return std::isfinite(v); });
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("quaternion must be non-zero and finite");
  // w == 0 is a 180 degree rotation; break the tie on the first non-zero component
  bool flip = w < 0.0;
  if (w == 0.0) flip = x < 0.0 || (x == 0.0 && (y < 0.0 || (y == 0.0 && z < 0.0)));
  const double s = (flip ? -1.0 : 1.0) / n;
  q_ = {w * s, x * s, y * s, z * s};
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  const double h = 0.5 * angle;
  const double s = std::sin(h);
  return {std::cos(h), u.x * s, u.y * s, u.z * s};
}

UnitQuaternion UnitQuaternion::from_rotation_vector(const Vec3& rv) {
  const double angle = rv.norm();
  if (angle < 1e-8) {
    // second-order series keeps the map smooth through zero
    const double h2 = 0.25 * angle * angle;
    const double c = 1.0 - 0.5 * h2;
    const double s = 0.5 * (1.0 - h2 / 6.0);
    return {c, rv.x * s, rv.y * s, rv.z * s};
  }
  const double s = std::sin(0.5 * angle) / angle;
  return {std::cos(0.5 * angle), rv.x * s, rv.y * s, rv.z * s};
}

UnitQuaternion UnitQuaternion::from_matrix(const Mat3& r) {
  // Shepperd's method: pick the largest of (w, x, y, z) magnitudes first.
  const double tr = r.trace();
  const double cand[4] = {tr, r(0, 0), r(1, 1), r(2, 2)};
  const int k = static_cast<int>(std::max_element(cand, cand + 4) - cand);
  double w, x, y, z;
  if (k == 0) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (k == 1) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (k == 2) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  return {w, x, y, z};
}

UnitQuaternion UnitQuaternion::conjugate() const {
  UnitQuaternion c;
  c.q_ = q_.conjugate();
  return c;
}

Mat3 UnitQuaternion::to_matrix() const {
  const auto [w, x, y, z] = q_;
  return Mat3{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
               2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
               2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

Vec3 UnitQuaternion::to_rotation_vector() const {
  // stored w >= 0, so this is already the shortest-path branch
  const Vec3 v = q_.vec();
  const double s = v.norm();
  if (s < 1e-8) return (2.0 / q_.w) * v;
  const double angle = 2.0 * std::atan2(s, q_.w);
  return (angle / s) * v;
}

double UnitQuaternion::angle() const { return 2.0 * std::atan2(q_.vec().norm(), q_.w); }

UnitQuaternion quat_multiply(const UnitQuaternion& q1, const UnitQuaternion& q2) {
  return UnitQuaternion(hamilton(q1.raw(), q2.raw()));
}

Vec3 quat_rotate(const UnitQuaternion& q, const Vec3& v) {
  // v' = v + 2w (u x v) + 2 u x (u x v)
  const Vec3 u{q.x(), q.y(), q.z()};
  const Vec3 t = 2.0 * cross(u, v);
  return v + q.w() * t + cross(u, t);
}

Vec3 quat_rotate_inverse(const UnitQuaternion& q, const Vec3& v) {
  return quat_rotate(q.conjugate(), v);
}

double angle_between(const UnitQuaternion& a, const UnitQuaternion& b) {
  return quat_multiply(a.conjugate(), b).angle();
}

}  // namespace gpsim
