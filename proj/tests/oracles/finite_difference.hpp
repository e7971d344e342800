#pragma once

#include <functional>

#include <Eigen/Dense>

namespace tgmc::oracle {

// Central differences of f at x, one coordinate at a time.
inline Eigen::VectorXd central_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double step = 1e-6) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double orig = xp[k];
    xp[k] = orig + step;
    const double fp = f(xp);
    xp[k] = orig - step;
    const double fm = f(xp);
    xp[k] = orig;
    g[k] = (fp - fm) / (2.0 * step);
  }
  return g;
}

// Central-difference Jacobian of a vector map.
inline Eigen::MatrixXd central_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double step = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd j(f0.size(), x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double orig = xp[k];
    xp[k] = orig + step;
    const Eigen::VectorXd fp = f(xp);
    xp[k] = orig - step;
    const Eigen::VectorXd fm = f(xp);
    xp[k] = orig;
    j.col(k) = (fp - fm) / (2.0 * step);
  }
  return j;
}

// |a - b| / max(|b|, floor), with norms taken over the whole object.
template <typename A, typename B>
double relative_error(const A& a, const B& b, double floor = 1.0) {
  return (a - b).norm() / std::max(b.norm(), floor);
}

}  // namespace tgmc::oracle
