#include "tgmc/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "tgmc/bingham.hpp"

namespace tgmc {

void ModelParams::validate() const {
  auto sorted_nonpositive = [](const Vec3& l) {
    return l.allFinite() && l[0] <= 0.0 && l[1] <= l[0] && l[2] <= l[1];
  };
  if (!sorted_nonpositive(data_lambda)) {
    throw std::invalid_argument("data_lambda must satisfy 0 >= l1 >= l2 >= l3");
  }
  if (!sorted_nonpositive(prior_lambda)) {
    throw std::invalid_argument("prior_lambda must satisfy 0 >= l1 >= l2 >= l3");
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("sigma2 must be > 0");
  if (!(prior_sigma2 > 0.0)) throw std::invalid_argument("prior_sigma2 must be > 0");
}

namespace {

void check_sizes(const PoseGraph& g, std::size_t nq, std::size_t nt) {
  if (nq != g.node_count() || nt != g.node_count()) {
    throw std::invalid_argument("estimate size does not match graph node count");
  }
}

template <bool kWithGradient>
PotentialTerms accumulate(const PoseGraph& g, std::span<const Vec4> q, std::span<const Vec3> t,
                          const ModelParams& p, GradientVector* grad) {
  check_sizes(g, q.size(), t.size());
  PotentialTerms terms;
  const double inv_sigma2 = 1.0 / p.sigma2;
  const Vec3& lambda = p.data_lambda;

  for (const auto& e : g.edges()) {
    const Vec4& qi = q[e.i];
    const Vec4& qj = q[e.j];
    const Vec4& x = e.rel.rotation.coeffs();
    const Vec4 r = hamilton(qj, conj(qi));

    // -log B(q_ij; Lambda, V(r))
    const Vec3 k = mode_frame_projection(r, x);
    terms.data_rotation -= lambda.dot(k.cwiseProduct(k));

    // -log N(t_ij; mu_ij, sigma2 I)
    const Mat3 s = sandwich_mat(r);
    const Vec3 mu = t[e.j] - s * t[e.i];
    const Vec3 err = e.rel.translation - mu;
    terms.data_translation += 0.5 * inv_sigma2 * err.squaredNorm();

    if constexpr (kWithGradient) {
      // dU/dr from both terms, then pushed to q_i and q_j through r.
      Vec4 du_dr = -2.0 * mode_frame_jacobian(x).transpose() * lambda.cwiseProduct(k);
      du_dr += inv_sigma2 * sandwich_jacobian(r, t[e.i]).transpose() * err;
      grad->rotation[e.i] += jac_rel_wrt_qi(qi, qj).transpose() * du_dr;
      grad->rotation[e.j] += jac_rel_wrt_qj(qi).transpose() * du_dr;
      // dmu/dt_i = -S(r), dmu/dt_j = I, dU/dmu = -err / sigma2.
      grad->translation[e.i] += inv_sigma2 * (s.transpose() * err);
      grad->translation[e.j] -= inv_sigma2 * err;
    }
  }

  const bool rotation_prior = !p.prior_lambda.isZero(0.0);
  const bool translation_prior = std::isfinite(p.prior_sigma2);
  if (rotation_prior || translation_prior) {
    const Eigen::Matrix<double, 4, 3> vp = v_matrix(p.prior_mode).rightCols<3>();
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (rotation_prior) {
        const Vec3 k = vp.transpose() * q[i];
        terms.prior_rotation -= p.prior_lambda.dot(k.cwiseProduct(k));
        if constexpr (kWithGradient) {
          grad->rotation[i] -= 2.0 * vp * p.prior_lambda.cwiseProduct(k);
        }
      }
      if (translation_prior) {
        terms.prior_translation += 0.5 * t[i].squaredNorm() / p.prior_sigma2;
        if constexpr (kWithGradient) grad->translation[i] += t[i] / p.prior_sigma2;
      }
    }
  }

  if constexpr (kWithGradient) {
    if (!grad->rotation.empty()) {
      grad->rotation[0].setZero();
      grad->translation[0].setZero();
    }
  }
  return terms;
}

struct Raw {
  std::vector<Vec4> q;
  std::vector<Vec3> t;
};

Raw unpack(const Estimate& est) {
  Raw raw;
  raw.q.reserve(est.size());
  raw.t.reserve(est.size());
  for (const Pose& p : est.poses) {
    raw.q.push_back(p.rotation.coeffs());
    raw.t.push_back(p.translation);
  }
  return raw;
}

}  // namespace

double potential_ambient(const PoseGraph& g, std::span<const Vec4> q, std::span<const Vec3> t,
                         const ModelParams& p) {
  return accumulate<false>(g, q, t, p, nullptr).total();
}

PotentialEval potential_and_grad_ambient(const PoseGraph& g, std::span<const Vec4> q,
                                         std::span<const Vec3> t, const ModelParams& p) {
  PotentialEval out;
  out.grad = GradientVector(q.size());
  out.value = accumulate<true>(g, q, t, p, &out.grad).total();
  return out;
}

PotentialTerms potential_terms(const PoseGraph& g, const Estimate& est, const ModelParams& p) {
  const Raw raw = unpack(est);
  return accumulate<false>(g, raw.q, raw.t, p, nullptr);
}

double potential_U(const PoseGraph& g, const Estimate& est, const ModelParams& p) {
  return potential_terms(g, est, p).total();
}

GradientVector grad_U(const PoseGraph& g, const Estimate& est, const ModelParams& p) {
  return evaluate(g, est, p).grad;
}

PotentialEval evaluate(const PoseGraph& g, const Estimate& est, const ModelParams& p) {
  const Raw raw = unpack(est);
  return potential_and_grad_ambient(g, raw.q, raw.t, p);
}

}  // namespace tgmc
