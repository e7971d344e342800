#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace tgmc::oracle {

// Second moments E[y_k^2] of the density exp(sum_k lambda_k y_{k+1}^2) on S^3,
// expressed in its own frame (y_1 is the mode axis), by midpoint quadrature
// over hyperspherical angles
//   y1 = cos a, y2 = sin a cos b, y3 = sin a sin b cos c, y4 = sin a sin b sin c
// with volume element sin^2 a sin b. `cells` is the count along a and b;
// c gets 2 * cells.
inline Eigen::Vector4d bingham_frame_moments(const Eigen::Vector3d& lambda, int cells = 200) {
  const double pi = std::numbers::pi;
  const int na = cells;
  const int nb = cells;
  const int nc = 2 * cells;
  const double da = pi / na;
  const double db = pi / nb;
  const double dc = 2.0 * pi / nc;
  double z = 0.0;
  Eigen::Vector4d m = Eigen::Vector4d::Zero();
  for (int ia = 0; ia < na; ++ia) {
    const double a = (ia + 0.5) * da;
    const double sa = std::sin(a);
    const double ca = std::cos(a);
    for (int ib = 0; ib < nb; ++ib) {
      const double b = (ib + 0.5) * db;
      const double sb = std::sin(b);
      const double cb = std::cos(b);
      const double vol = sa * sa * sb;
      const double y2 = sa * cb;
      for (int ic = 0; ic < nc; ++ic) {
        const double c = (ic + 0.5) * dc;
        const double y3 = sa * sb * std::cos(c);
        const double y4 = sa * sb * std::sin(c);
        const double w =
            vol * std::exp(lambda[0] * y2 * y2 + lambda[1] * y3 * y3 + lambda[2] * y4 * y4);
        z += w;
        m[0] += w * ca * ca;
        m[1] += w * y2 * y2;
        m[2] += w * y3 * y3;
        m[3] += w * y4 * y4;
      }
    }
  }
  return m / z;
}

}  // namespace tgmc::oracle
