#include "tgmc/bingham.hpp"

#include <array>
#include <cmath>
#include <string>

namespace tgmc {

BinghamParams::BinghamParams(const Vec3& lambda, const UnitQuaternion& mode)
    : lambda_(lambda), mode_(mode) {
  if (!lambda.allFinite()) throw std::invalid_argument("Bingham: non-finite concentration");
  if (!(lambda[0] <= 0.0 && lambda[1] <= lambda[0] && lambda[2] <= lambda[1])) {
    throw std::invalid_argument("Bingham: concentrations must satisfy 0 >= l1 >= l2 >= l3");
  }
}

Vec3 mode_frame_projection(const Vec4& r, const Vec4& x) {
  return v_matrix(r).rightCols<3>().transpose() * x;
}

Mat34 mode_frame_jacobian(const Vec4& x) {
  // Differentiated straight from the v_matrix columns:
  //   col2 . x =  r1 x2 - r2 x1 + r3 x4 - r4 x3
  //   col3 . x =  r1 x3 - r2 x4 - r3 x1 + r4 x2
  //   col4 . x = -r1 x4 - r2 x3 + r3 x2 + r4 x1
  Mat34 j;
  j <<  x[1], -x[0],  x[3], -x[2],
        x[2], -x[3], -x[0],  x[1],
       -x[3], -x[2],  x[1],  x[0];
  return j;
}

double log_density_unnorm(const BinghamParams& p, const Vec4& x) {
  const Vec3 k = p.frame().transpose() * x;
  return p.lambda().dot(k.cwiseProduct(k));
}

Vec4 grad_x(const BinghamParams& p, const Vec4& x) {
  const Eigen::Matrix<double, 4, 3> v = p.frame();
  const Vec3 k = v.transpose() * x;
  return 2.0 * v * p.lambda().cwiseProduct(k);
}

Vec4 grad_mode(const Vec4& r, const Vec3& lambda, const Vec4& x) {
  const Vec3 k = mode_frame_projection(r, x);
  return 2.0 * mode_frame_jacobian(x).transpose() * lambda.cwiseProduct(k);
}

namespace {

// Envelope parameters for the angular central Gaussian bound. In mode-frame
// coordinates the target is exp(-y^T A y) with A = diag(0, -l1, -l2, -l3);
// b solves sum_i 1 / (b + 2 a_i) = 1 on (0, 4].
struct Envelope {
  std::array<double, 4> a{};
  std::array<double, 4> omega{};
  double log_m = 0.0;
};

Envelope make_envelope(const Vec3& lambda) {
  Envelope e;
  e.a = {0.0, -lambda[0], -lambda[1], -lambda[2]};
  auto f = [&](double b) {
    double s = 0.0;
    for (double ai : e.a) s += 1.0 / (b + 2.0 * ai);
    return s - 1.0;
  };
  double b = 4.0;
  if (f(4.0) < 0.0) {
    // f is decreasing; f(1) >= 0 because of the zero eigenvalue.
    double lo = 1.0;
    double hi = 4.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    b = 0.5 * (lo + hi);
  }
  for (int i = 0; i < 4; ++i) e.omega[i] = 1.0 + 2.0 * e.a[i] / b;
  constexpr double q = 4.0;
  e.log_m = -0.5 * (q - b) + 0.5 * q * std::log(q / b);
  return e;
}

Vec4 draw_frame_coords(const Envelope& e, CounterRng& rng, std::size_t max_proposals) {
  for (std::size_t n = 0; n < max_proposals; ++n) {
    Vec4 y;
    for (int i = 0; i < 4; ++i) y[i] = rng.normal() / std::sqrt(e.omega[i]);
    const double norm = y.norm();
    if (norm == 0.0) continue;
    y /= norm;
    double quad_a = 0.0;
    double quad_omega = 0.0;
    for (int i = 0; i < 4; ++i) {
      quad_a += e.a[i] * y[i] * y[i];
      quad_omega += e.omega[i] * y[i] * y[i];
    }
    const double log_ratio = -quad_a + 2.0 * std::log(quad_omega) - e.log_m;
    if (std::log(rng.uniform()) < log_ratio) return y;
  }
  throw SamplerFailure("Bingham sampler exceeded " + std::to_string(max_proposals) +
                       " proposals for one draw");
}

}  // namespace

UnitQuaternion sample_one(const BinghamParams& p, CounterRng& rng, std::size_t max_proposals) {
  const Envelope e = make_envelope(p.lambda());
  return UnitQuaternion(v_matrix(p.mode()) * draw_frame_coords(e, rng, max_proposals));
}

std::vector<UnitQuaternion> sample(const BinghamParams& p, CounterRng& rng, std::size_t n,
                                   std::size_t max_proposals) {
  const Envelope e = make_envelope(p.lambda());
  const Mat4 v = v_matrix(p.mode());
  std::vector<UnitQuaternion> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(v * draw_frame_coords(e, rng, max_proposals));
  }
  return out;
}

}  // namespace tgmc
