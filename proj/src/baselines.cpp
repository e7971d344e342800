#include "tgmc/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace tgmc {

Estimate mst_propagate(const PoseGraph& g) {
  const std::size_t n = g.node_count();
  const std::vector<std::size_t> tree = spanning_tree(g);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> children(n);
  for (std::size_t k : tree) {
    const auto& e = g.edges()[k];
    children[e.i].emplace_back(e.j, k);
    children[e.j].emplace_back(e.i, k);
  }

  Estimate est;
  est.poses.assign(n, Pose::Identity());
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> stack{0};
  placed[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (auto [v, k] : children[u]) {
      if (placed[v]) continue;
      const auto& e = g.edges()[k];
      const Pose rel = (e.i == u) ? e.rel : inverse(e.rel);
      est.poses[v] = compose(rel, est.poses[u]);
      placed[v] = true;
      stack.push_back(v);
    }
  }
  return est;
}

std::pair<Estimate, RunReport> pgd(const PoseGraph& g, const ModelParams& p, std::size_t steps,
                                   double step_size, const Estimate& init) {
  const auto t0 = std::chrono::steady_clock::now();
  Estimate cur = init.pinned();
  RunReport report;
  PotentialEval eval = evaluate(g, cur, p);
  if (!std::isfinite(eval.value)) throw DivergenceError("pgd: non-finite potential at start");
  report.initial_u = report.best_u = eval.value;
  Estimate best = cur;

  for (std::size_t k = 0; k < steps; ++k) {
    double step_norm = 0.0;
    for (std::size_t i = 1; i < cur.size(); ++i) {
      const Vec4 dq = step_size * eval.grad.rotation[i];
      const Vec3 dt = step_size * eval.grad.translation[i];
      step_norm += dq.squaredNorm() + dt.squaredNorm();
      const Vec4 moved = cur.poses[i].rotation.coeffs() - dq;
      const double norm = moved.norm();
      if (!std::isfinite(norm) || norm == 0.0) {
        throw DivergenceError("pgd: iterate left the representable range");
      }
      cur.poses[i].rotation = UnitQuaternion(moved);
      cur.poses[i].translation -= dt;
    }
    eval = evaluate(g, cur, p);
    if (!std::isfinite(eval.value)) {
      throw DivergenceError("pgd: non-finite potential at iteration " + std::to_string(k + 1));
    }
    report.u_trace.push_back(eval.value);
    report.momentum_norm.push_back(std::sqrt(step_norm));
    if (eval.value < report.best_u) {
      report.best_u = eval.value;
      report.best_iteration = k + 1;
      best = cur;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.final_estimate = best;
  return {best, report};
}

std::vector<double> default_pgd_grid() { return {1.0, 1e-1, 1e-2, 1e-3, 1e-4}; }

PgdGridResult pgd_best_over_grid(const PoseGraph& g, const ModelParams& p, std::size_t steps,
                                 double base_step, const std::vector<double>& multipliers,
                                 const Estimate& init) {
  PgdGridResult best;
  bool found = false;
  for (double m : multipliers) {
    try {
      auto [est, rep] = pgd(g, p, steps, base_step * m, init);
      if (!found || rep.best_u < best.report.best_u) {
        best.estimate = std::move(est);
        best.report = std::move(rep);
        best.step_size = base_step * m;
        found = true;
      }
    } catch (const DivergenceError&) {
      ++best.failures;
    }
  }
  if (!found) throw DivergenceError("pgd: every grid step size diverged");
  return best;
}

}  // namespace tgmc
