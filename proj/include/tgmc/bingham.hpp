#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tgmc/quaternion.hpp"
#include "tgmc/rng.hpp"

namespace tgmc {

class SamplerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bingham distribution on S^3 with concentration diag(0, l1, l2, l3) in the
// frame v_matrix(mode). The leading zero eigenvalue is implicit. Densities
// are unnormalized everywhere.
class BinghamParams {
 public:
  // Requires 0 >= l1 >= l2 >= l3, all finite. Throws std::invalid_argument.
  BinghamParams(const Vec3& lambda, const UnitQuaternion& mode);
  static BinghamParams Isotropic(double lambda, const UnitQuaternion& mode) {
    return {Vec3::Constant(lambda), mode};
  }

  const Vec3& lambda() const { return lambda_; }
  const UnitQuaternion& mode() const { return mode_; }
  // Columns 2..4 of v_matrix(mode).
  Eigen::Matrix<double, 4, 3> frame() const { return v_matrix(mode_).rightCols<3>(); }

 private:
  Vec3 lambda_;
  UnitQuaternion mode_;
};

// sum_k lambda_k (v_k . x)^2 over the three non-mode columns.
double log_density_unnorm(const BinghamParams& p, const Vec4& x);
inline double log_density_unnorm(const BinghamParams& p, const UnitQuaternion& x) {
  return log_density_unnorm(p, x.coeffs());
}

// 2 V Lambda V^T x (ambient).
Vec4 grad_x(const BinghamParams& p, const Vec4& x);

// k = V(r)^T x restricted to the three non-mode columns.
Vec3 mode_frame_projection(const Vec4& r, const Vec4& x);
// d k / d r. Linear in x, independent of r.
Mat34 mode_frame_jacobian(const Vec4& x);

// Gradient of log B(x; Lambda, V(r)) with respect to the mode argument r
// (ambient, r need not be unit).
Vec4 grad_mode(const Vec4& r, const Vec3& lambda, const Vec4& x);

inline const UnitQuaternion& mode(const BinghamParams& p) { return p.mode(); }

// Exact draws by rejection from an angular central Gaussian envelope.
// Throws SamplerFailure when a single draw needs more than
// `max_proposals` proposals.
UnitQuaternion sample_one(const BinghamParams& p, CounterRng& rng,
                          std::size_t max_proposals = 1'000'000);
std::vector<UnitQuaternion> sample(const BinghamParams& p, CounterRng& rng, std::size_t n,
                                   std::size_t max_proposals = 1'000'000);

}  // namespace tgmc
