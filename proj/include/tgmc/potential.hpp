#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tgmc/pose_graph.hpp"
#include "tgmc/quaternion.hpp"

namespace tgmc {

// Noise model and priors of the negative log-posterior.
//
// Data:  q_ij ~ Bingham(data_lambda, V(q_j q̄_i)),  t_ij ~ N(mu_ij, sigma2 I)
//        with mu_ij = t_j - (q_j q̄_i) t_i (q_i q̄_j).
// Prior: q_i ~ Bingham(prior_lambda, V(prior_mode)),  t_i ~ N(0, prior_sigma2 I).
// prior_lambda = 0 makes the rotation prior flat; an infinite prior_sigma2
// drops the translation prior.
struct ModelParams {
  Vec3 data_lambda = Vec3::Constant(-350.0);
  double sigma2 = 0.01;
  Vec3 prior_lambda = Vec3::Zero();
  UnitQuaternion prior_mode;
  double prior_sigma2 = std::numeric_limits<double>::infinity();

  // Throws std::invalid_argument on non-positive variances or unsorted /
  // positive concentrations.
  void validate() const;
};

// Gradient of U, laid out like the latent vector: one ambient 4-vector per
// rotation and one 3-vector per translation. Node 0 slots stay zero.
struct GradientVector {
  std::vector<Vec4> rotation;
  std::vector<Vec3> translation;

  explicit GradientVector(std::size_t n = 0)
      : rotation(n, Vec4::Zero()), translation(n, Vec3::Zero()) {}
};

struct PotentialEval {
  double value = 0.0;
  GradientVector grad;
};

// U on raw ambient coordinates. Rotations need not be unit, so this is the
// function finite differences probe. Edges are visited in the graph's
// canonical order.
double potential_ambient(const PoseGraph& g, std::span<const Vec4> q, std::span<const Vec3> t,
                         const ModelParams& p);
PotentialEval potential_and_grad_ambient(const PoseGraph& g, std::span<const Vec4> q,
                                         std::span<const Vec3> t, const ModelParams& p);

double potential_U(const PoseGraph& g, const Estimate& est, const ModelParams& p);
// Ambient gradient of U (the ascent direction of the potential).
GradientVector grad_U(const PoseGraph& g, const Estimate& est, const ModelParams& p);
PotentialEval evaluate(const PoseGraph& g, const Estimate& est, const ModelParams& p);

// Split of U into its four sums, for reports and tests.
struct PotentialTerms {
  double data_rotation = 0.0;
  double data_translation = 0.0;
  double prior_rotation = 0.0;
  double prior_translation = 0.0;

  double total() const { return data_rotation + data_translation + prior_rotation + prior_translation; }
};
PotentialTerms potential_terms(const PoseGraph& g, const Estimate& est, const ModelParams& p);

}  // namespace tgmc
