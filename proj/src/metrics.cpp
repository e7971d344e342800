#include "tgmc/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tgmc {

namespace {

void check_same_size(const Estimate& a, const Estimate& b) {
  if (a.size() != b.size()) throw std::invalid_argument("estimates differ in node count");
}

Pose gauge_motion(const Estimate& est, const Estimate& gt, GaugeAlignment mode) {
  if (est.size() == 0) return Pose::Identity();
  if (mode == GaugeAlignment::kNode0) return compose(inverse(est.poses[0]), gt.poses[0]);

  // est_i ∘ G ≈ gt_i: R_i R_G ≈ R_gt,i and R_i t_G + t_i ≈ t_gt,i.
  std::vector<UnitQuaternion> candidates;
  candidates.reserve(est.size());
  for (std::size_t i = 0; i < est.size(); ++i) {
    candidates.push_back(conjugate(est.poses[i].rotation) * gt.poses[i].rotation);
  }
  Pose g;
  g.rotation = quaternion_mean(candidates).first;
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 0; i < est.size(); ++i) {
    acc += rotation_matrix(est.poses[i].rotation).transpose() *
           (gt.poses[i].translation - est.poses[i].translation);
  }
  g.translation = acc / static_cast<double>(est.size());
  return g;
}

}  // namespace

Estimate align_gauge(const Estimate& est, const Estimate& gt, GaugeAlignment mode) {
  check_same_size(est, gt);
  const Pose g = gauge_motion(est, gt, mode);
  Estimate out;
  out.poses.reserve(est.size());
  for (const Pose& p : est.poses) out.poses.push_back(compose(p, g));
  if (mode == GaugeAlignment::kNode0 && est.size() > 0) out.poses[0] = gt.poses[0];
  return out;
}

double mean_rotation_error(const Estimate& est, const Estimate& gt, GaugeAlignment mode) {
  const Estimate a = align_gauge(est, gt, mode);
  if (a.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += riemannian_distance(a.poses[i].rotation, gt.poses[i].rotation);
  }
  return sum / static_cast<double>(a.size());
}

double mean_translation_error(const Estimate& est, const Estimate& gt, GaugeAlignment mode) {
  const Estimate a = align_gauge(est, gt, mode);
  if (a.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a.poses[i].translation - gt.poses[i].translation).norm();
  }
  return sum / static_cast<double>(a.size());
}

std::pair<UnitQuaternion, double> quaternion_mean(const std::vector<UnitQuaternion>& qs) {
  if (qs.empty()) throw std::invalid_argument("quaternion_mean: empty input");
  Mat4 m = Mat4::Zero();
  for (const auto& q : qs) m += q.coeffs() * q.coeffs().transpose();
  m /= static_cast<double>(qs.size());
  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  // Eigenvalues ascend.
  return {UnitQuaternion(Vec4(es.eigenvectors().col(3))), es.eigenvalues()[3]};
}

std::vector<NodeUncertainty> uncertainty_stats(const std::vector<Estimate>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("uncertainty_stats needs at least 2 samples");
  const std::size_t n = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != n) throw std::invalid_argument("samples differ in node count");
  }
  const double k = static_cast<double>(samples.size());
  std::vector<NodeUncertainty> out(n);
  std::vector<UnitQuaternion> qs(samples.size());
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 mean = Vec3::Zero();
    for (std::size_t s = 0; s < samples.size(); ++s) {
      qs[s] = samples[s].poses[i].rotation;
      mean += samples[s].poses[i].translation;
    }
    mean /= k;
    Mat3 cov = Mat3::Zero();
    for (const auto& s : samples) {
      const Vec3 d = s.poses[i].translation - mean;
      cov += d * d.transpose();
    }
    cov /= (k - 1.0);
    const auto [qm, top] = quaternion_mean(qs);
    out[i].rotation_mean = qm;
    out[i].rotation_dispersion = std::clamp(1.0 - top, 0.0, 0.75);
    out[i].translation_mean = mean;
    out[i].translation_covariance = cov;
  }
  return out;
}

}  // namespace tgmc
