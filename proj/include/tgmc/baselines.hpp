#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tgmc/pose_graph.hpp"
#include "tgmc/potential.hpp"
#include "tgmc/sampler.hpp"

namespace tgmc {

// Composes measurements along spanning_tree(g) outward from node 0, which
// is set to the identity. Throws GraphError when disconnected.
Estimate mst_propagate(const PoseGraph& g);

// Projected gradient descent: theta <- theta - step_size * grad U, then each
// quaternion is renormalized. Node 0 stays pinned. Returns the best iterate.
std::pair<Estimate, RunReport> pgd(const PoseGraph& g, const ModelParams& p, std::size_t steps,
                                   double step_size, const Estimate& init);

struct PgdGridResult {
  Estimate estimate;
  RunReport report;
  double step_size = 0.0;
  std::size_t failures = 0;  // grid points that diverged
};

// Runs pgd() for base_step * m for every multiplier m and keeps the lowest
// best-U. Diverging grid points are skipped; throws DivergenceError when all
// diverge.
PgdGridResult pgd_best_over_grid(const PoseGraph& g, const ModelParams& p, std::size_t steps,
                                 double base_step, const std::vector<double>& multipliers,
                                 const Estimate& init);

// Default multipliers applied to 0.5 h.
std::vector<double> default_pgd_grid();

}  // namespace tgmc
