#include "tgmc/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgmc {

namespace {

Mat3 skew(const Vec3& a) {
  Mat3 s;
  s << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return s;
}

}  // namespace

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z)
    : UnitQuaternion(Vec4(w, x, y, z)) {}

UnitQuaternion::UnitQuaternion(const Vec4& coeffs) {
  const double n = coeffs.norm();
  if (!std::isfinite(n) || n == 0.0) {
    throw std::invalid_argument("UnitQuaternion: zero or non-finite coefficients");
  }
  c_ = coeffs / n;
}

UnitQuaternion UnitQuaternion::FromAxisAngle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) return Identity();
  const Vec3 a = axis / n;
  const double s = std::sin(0.5 * angle);
  return UnitQuaternion(std::cos(0.5 * angle), s * a.x(), s * a.y(), s * a.z());
}

Vec4 hamilton(const Vec4& p, const Vec4& r) {
  const double p1 = p[0];
  const double r1 = r[0];
  const Vec3 pv = p.tail<3>();
  const Vec3 rv = r.tail<3>();
  Vec4 out;
  out[0] = p1 * r1 - pv.dot(rv);
  out.tail<3>() = p1 * rv + r1 * pv + pv.cross(rv);
  return out;
}

Vec4 conj(const Vec4& q) { return Vec4(q[0], -q[1], -q[2], -q[3]); }

Mat4 left_mat(const Vec4& p) {
  Mat4 m;
  m << p[0], -p[1], -p[2], -p[3],
       p[1],  p[0], -p[3],  p[2],
       p[2],  p[3],  p[0], -p[1],
       p[3], -p[2],  p[1],  p[0];
  return m;
}

Mat4 right_mat(const Vec4& r) {
  Mat4 m;
  m << r[0], -r[1], -r[2], -r[3],
       r[1],  r[0],  r[3], -r[2],
       r[2], -r[3],  r[0],  r[1],
       r[3],  r[2], -r[1],  r[0];
  return m;
}

Mat3 sandwich_mat(const Vec4& q) {
  const double w = q[0];
  const Vec3 v = q.tail<3>();
  return (w * w - v.squaredNorm()) * Mat3::Identity() + 2.0 * v * v.transpose() +
         2.0 * w * skew(v);
}

Mat34 sandwich_jacobian(const Vec4& q, const Vec3& u) {
  const double w = q[0];
  const Vec3 v = q.tail<3>();
  Mat34 j;
  j.col(0) = 2.0 * w * u + 2.0 * v.cross(u);
  j.rightCols<3>() = -2.0 * u * v.transpose() + 2.0 * v * u.transpose() +
                     2.0 * v.dot(u) * Mat3::Identity() - 2.0 * w * skew(u);
  return j;
}

UnitQuaternion qmul(const UnitQuaternion& p, const UnitQuaternion& r) {
  return UnitQuaternion::FromUnitCoeffs(hamilton(p.coeffs(), r.coeffs()));
}

UnitQuaternion conjugate(const UnitQuaternion& q) {
  return UnitQuaternion::FromUnitCoeffs(conj(q.coeffs()));
}

Vec3 rotate_point(const UnitQuaternion& q, const Vec3& u) {
  Vec4 p;
  p << 0.0, u;
  return hamilton(hamilton(q.coeffs(), p), conj(q.coeffs())).tail<3>();
}

Mat3 rotation_matrix(const UnitQuaternion& q) { return sandwich_mat(q.coeffs()); }

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation * b.rotation, rotate_point(a.rotation, b.translation) + a.translation};
}

Pose inverse(const Pose& p) {
  const UnitQuaternion qi = conjugate(p.rotation);
  return {qi, -rotate_point(qi, p.translation)};
}

Pose relative_pose(const Pose& pose_i, const Pose& pose_j) {
  const UnitQuaternion r = pose_j.rotation * conjugate(pose_i.rotation);
  return {r, pose_j.translation - rotate_point(r, pose_i.translation)};
}

Mat4 v_matrix(const Vec4& q) {
  Mat4 v;
  v << q[0], -q[1], -q[2],  q[3],
       q[1],  q[0],  q[3],  q[2],
       q[2], -q[3],  q[0], -q[1],
       q[3],  q[2], -q[1], -q[0];
  return v;
}

GeodesicPoint geodesic_flow(const UnitQuaternion& x, const Vec4& v, double t) {
  const double alpha = v.norm();
  if (alpha == 0.0) return {x, v};
  const double c = std::cos(alpha * t);
  const double s = std::sin(alpha * t);
  const Vec4 x_new = x.coeffs() * c + (v / alpha) * s;
  const Vec4 v_new = -alpha * x.coeffs() * s + v * c;
  return {UnitQuaternion::FromUnitCoeffs(x_new), v_new};
}

Vec4 tangent_project(const Vec4& x, const Vec4& u) { return u - x.dot(u) * x; }

Vec4 tangent_project(const UnitQuaternion& x, const Vec4& u) {
  // Dividing by x . x keeps the result exactly tangent when x has drifted
  // off the sphere by rounding; otherwise the geodesic flow feeds the
  // tangency error back into the norm and it grows without bound.
  const Vec4& c = x.coeffs();
  return u - (c.dot(u) / c.squaredNorm()) * c;
}

Mat4 jac_rel_wrt_qi(const Vec4& /*q_i*/, const Vec4& q_j) {
  // q_j ⊗ q̄_i is linear in q_i: left_mat(q_j) * diag(1, -1, -1, -1).
  Mat4 j = left_mat(q_j);
  j.rightCols<3>() *= -1.0;
  return j;
}

Mat4 jac_rel_wrt_qj(const Vec4& q_i) { return right_mat(conj(q_i)); }

Mat3 jac_mu_wrt_ti(const Vec4& r) { return -sandwich_mat(r); }

Mat34 jac_mu_wrt_qi(const Vec4& q_i, const Vec4& q_j, const Vec3& t_i) {
  const Vec4 r = hamilton(q_j, conj(q_i));
  return -sandwich_jacobian(r, t_i) * jac_rel_wrt_qi(q_i, q_j);
}

Mat34 jac_mu_wrt_qj(const Vec4& q_i, const Vec4& q_j, const Vec3& t_i) {
  const Vec4 r = hamilton(q_j, conj(q_i));
  return -sandwich_jacobian(r, t_i) * jac_rel_wrt_qj(q_i);
}

double riemannian_distance(const UnitQuaternion& a, const UnitQuaternion& b) {
  // Same value as 2 acos(|a . b|), but accurate near zero.
  const Vec4 p = hamilton(conj(a.coeffs()), b.coeffs());
  return 2.0 * std::atan2(p.tail<3>().norm(), std::abs(p[0]));
}

}  // namespace tgmc
