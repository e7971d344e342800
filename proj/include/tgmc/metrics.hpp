#pragma once

#include <vector>

#include "tgmc/pose_graph.hpp"

namespace tgmc {

enum class GaugeAlignment {
  kNode0,         // map estimated node 0 exactly onto ground-truth node 0
  kLeastSquares,  // rotation by quaternion averaging, translation by least squares
};

// Re-expresses `est` under the single global rigid motion chosen by `mode`.
// The motion acts on the world side, so every relative pose is unchanged.
Estimate align_gauge(const Estimate& est, const Estimate& gt,
                     GaugeAlignment mode = GaugeAlignment::kNode0);

// Mean over nodes of 2 acos(|q̂_i . q_i|) after alignment, in radians.
double mean_rotation_error(const Estimate& est, const Estimate& gt,
                           GaugeAlignment mode = GaugeAlignment::kNode0);
// Mean over nodes of |t̂_i - t_i| after alignment.
double mean_translation_error(const Estimate& est, const Estimate& gt,
                              GaugeAlignment mode = GaugeAlignment::kNode0);

struct NodeUncertainty {
  UnitQuaternion rotation_mean;
  double rotation_dispersion = 0.0;  // 1 - largest eigenvalue of E[q q^T], in [0, 3/4]
  Vec3 translation_mean = Vec3::Zero();
  Mat3 translation_covariance = Mat3::Zero();
};

// Per-node statistics over posterior samples. Throws std::invalid_argument
// for fewer than two samples or mismatched sizes.
std::vector<NodeUncertainty> uncertainty_stats(const std::vector<Estimate>& samples);

// Dominant eigenvector of (1/k) sum q q^T together with its eigenvalue.
std::pair<UnitQuaternion, double> quaternion_mean(const std::vector<UnitQuaternion>& qs);

}  // namespace tgmc
