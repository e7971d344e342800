#pragma once

#include <Eigen/Dense>

namespace tgmc {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat34 = Eigen::Matrix<double, 3, 4>;

// Point on S^3, stored scalar-first (w, x, y, z). q and -q name the same
// rotation; nothing here canonicalizes the sign.
class UnitQuaternion {
 public:
  UnitQuaternion() : c_(1.0, 0.0, 0.0, 0.0) {}
  UnitQuaternion(double w, double x, double y, double z);
  // Normalizes. Throws std::invalid_argument on a zero or non-finite vector.
  explicit UnitQuaternion(const Vec4& coeffs);

  // For manifold updates that already preserve the norm (geodesic flow).
  // No renormalization is performed.
  static UnitQuaternion FromUnitCoeffs(const Vec4& coeffs) {
    UnitQuaternion q;
    q.c_ = coeffs;
    return q;
  }
  static UnitQuaternion Identity() { return {}; }
  // Rotation of `angle` radians about `axis` (need not be normalized).
  static UnitQuaternion FromAxisAngle(const Vec3& axis, double angle);

  double w() const { return c_[0]; }
  double x() const { return c_[1]; }
  double y() const { return c_[2]; }
  double z() const { return c_[3]; }
  const Vec4& coeffs() const { return c_; }
  Vec3 vec() const { return c_.tail<3>(); }

  UnitQuaternion operator-() const { return FromUnitCoeffs(-c_); }
  double dot(const UnitQuaternion& o) const { return c_.dot(o.c_); }

 private:
  Vec4 c_;
};

// Rigid motion X -> R(rotation) X + translation.
struct Pose {
  UnitQuaternion rotation;
  Vec3 translation = Vec3::Zero();

  static Pose Identity() { return {}; }
};

// ---------------------------------------------------------------------------
// Ambient (R^4) algebra. These accept arbitrary 4-vectors so that finite
// differences can leave the sphere; on unit inputs they agree with the
// UnitQuaternion overloads below.

Vec4 hamilton(const Vec4& p, const Vec4& r);
Vec4 conj(const Vec4& q);
// Left-multiplication matrix: hamilton(p, r) == left_mat(p) * r.
Mat4 left_mat(const Vec4& p);
// Right-multiplication matrix: hamilton(p, r) == right_mat(r) * p.
Mat4 right_mat(const Vec4& r);
// Matrix of the sandwich map u -> vec(q (0,u) q̄). Orthogonal for unit q,
// scaled by |q|^2 otherwise.
Mat3 sandwich_mat(const Vec4& q);
// d/dq of vec(q (0,u) q̄), a 3x4 matrix.
Mat34 sandwich_jacobian(const Vec4& q, const Vec3& u);

// ---------------------------------------------------------------------------

UnitQuaternion qmul(const UnitQuaternion& p, const UnitQuaternion& r);
inline UnitQuaternion operator*(const UnitQuaternion& p, const UnitQuaternion& r) {
  return qmul(p, r);
}
UnitQuaternion conjugate(const UnitQuaternion& q);
inline UnitQuaternion inverse(const UnitQuaternion& q) { return conjugate(q); }

Vec3 rotate_point(const UnitQuaternion& q, const Vec3& u);
Mat3 rotation_matrix(const UnitQuaternion& q);

// Apply `b` first, then `a`.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);
// The relative motion M_j M_i^-1: rotation q_j q̄_i, translation
// t_j - R(q_j q̄_i) t_i. compose(relative_pose(i, j), i) reproduces j.
Pose relative_pose(const Pose& pose_i, const Pose& pose_j);

// Orthonormal frame whose first column is q:
//   col1 = ( q1,  q2,  q3,  q4)
//   col2 = (-q2,  q1, -q4,  q3)
//   col3 = (-q3,  q4,  q1, -q2)
//   col4 = ( q4,  q3, -q2, -q1)
Mat4 v_matrix(const Vec4& q);
inline Mat4 v_matrix(const UnitQuaternion& q) { return v_matrix(q.coeffs()); }

// Great-circle motion of (x, v) for time t. Returns the inputs unchanged
// when |v| == 0.
struct GeodesicPoint {
  UnitQuaternion x;
  Vec4 v;
};
GeodesicPoint geodesic_flow(const UnitQuaternion& x, const Vec4& v, double t);

// (I - x x^T) u
Vec4 tangent_project(const UnitQuaternion& x, const Vec4& u);
Vec4 tangent_project(const Vec4& x, const Vec4& u);

// d(q_j ⊗ q̄_i)/d q_i, ambient.
Mat4 jac_rel_wrt_qi(const Vec4& q_i, const Vec4& q_j);
// d(q_j ⊗ q̄_i)/d q_j, ambient.
Mat4 jac_rel_wrt_qj(const Vec4& q_i);
// d mu / d t_i with mu = t_j - r t_i r̄. Equals -R(r).
Mat3 jac_mu_wrt_ti(const Vec4& r);
// d mu / d q_i through r = q_j q̄_i.
Mat34 jac_mu_wrt_qi(const Vec4& q_i, const Vec4& q_j, const Vec3& t_i);
// d mu / d q_j through r = q_j q̄_i.
Mat34 jac_mu_wrt_qj(const Vec4& q_i, const Vec4& q_j, const Vec3& t_i);

// 2 arccos(|a . b|), clamped.
double riemannian_distance(const UnitQuaternion& a, const UnitQuaternion& b);

}  // namespace tgmc
