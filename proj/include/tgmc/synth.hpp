#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "tgmc/pose_graph.hpp"
#include "tgmc/potential.hpp"
#include "tgmc/rng.hpp"
#include "tgmc/sampler.hpp"

namespace tgmc {

struct SynthConfig {
  std::size_t nodes = 20;
  double completeness = 0.5;                   // fraction of the n(n-1)/2 pairs kept
  Vec3 noise_lambda = Vec3::Constant(-350.0);  // -inf entries: exact rotations
  double noise_sigma2 = 0.01;                  // 0: exact translations
  double outlier_ratio = 0.0;
  std::uint64_t seed = 0;
  double scene_scale = 1.0;                    // ground-truth translation std
  // Draw ground-truth rotations from Bingham(ground_truth_lambda, identity)
  // instead of uniformly.
  bool bingham_ground_truth = false;
  Vec3 ground_truth_lambda = Vec3::Constant(-1.0);

  bool noiseless_rotations() const { return !noise_lambda.allFinite(); }
  void validate() const;
};

struct SynthProblem {
  PoseGraph graph;                        // carries ground truth
  std::vector<std::size_t> outlier_edges; // indices into graph.edges()
};

// Ground truth, a connected edge subset of size max(n-1, round(e n(n-1)/2))
// seeded with a random spanning tree, measurements drawn from the noise
// model, then round(outlier_ratio |E|) edges corrupted by a 60-80 degree
// rotation about a random axis and a translation offset of norm U[0, 1].
SynthProblem generate(const SynthConfig& config);

std::size_t target_edge_count(std::size_t n, double completeness);

// ---------------------------------------------------------------------------
// Benchmark sweeps.

enum class SolverKind { kTgmcmc, kMst, kPgd };
std::string to_string(SolverKind s);
SolverKind parse_solver(const std::string& s);

struct SolveOptions {
  SamplerConfig sampler;                 // iterations shared with PGD
  std::vector<double> pgd_grid = {};     // empty: default_pgd_grid()
  std::vector<SolverKind> solvers = {SolverKind::kTgmcmc, SolverKind::kMst, SolverKind::kPgd};
};

struct BenchRow {
  std::string sweep;
  double grid_value = 0.0;
  std::uint64_t seed = 0;
  std::string solver;
  double mre = 0.0;
  double mte = 0.0;
  double gc = 0.0;
  double u_final = 0.0;
  double wall_seconds = 0.0;
  std::string error;
};

// Solves `problem` with one solver, using model parameters `model`, and
// evaluates it against the problem's ground truth. Errors land in row.error.
BenchRow solve_and_score(const SynthProblem& problem, const ModelParams& model, SolverKind solver,
                         const SolveOptions& options);

// Each grid value x replaces one field of `base`:
//   noise:        noise_lambda = (-x, -x, -x); model data_lambda follows
//   completeness: completeness = x
//   outliers:     outlier_ratio = x
// Seed k of every grid value generates with base.seed + k, so grid values
// share ground truth and edge sets. The model's data_lambda and sigma2
// track the generating noise (see matched_model).
std::vector<BenchRow> sweep_noise(const SynthConfig& base, const std::vector<double>& grid,
                                  std::size_t seeds, const SolveOptions& options);
std::vector<BenchRow> sweep_completeness(const SynthConfig& base, const std::vector<double>& grid,
                                         std::size_t seeds, const SolveOptions& options);
std::vector<BenchRow> sweep_outliers(const SynthConfig& base, const std::vector<double>& grid,
                                     std::size_t seeds, const SolveOptions& options);
// Grid values are iteration budgets for the iterative solvers.
std::vector<BenchRow> sweep_iterations(const SynthConfig& base, const std::vector<double>& grid,
                                       std::size_t seeds, const SolveOptions& options);

// Model parameters matched to the generating noise (isotropic rotation
// noise at -350 when the data are noiseless).
ModelParams matched_model(const SynthConfig& config);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace tgmc
