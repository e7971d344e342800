#include "tgmc/synth.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "tgmc/baselines.hpp"
#include "tgmc/bingham.hpp"
#include "tgmc/g2o_io.hpp"
#include "tgmc/metrics.hpp"

namespace tgmc {

namespace {

enum Stream : std::uint64_t {
  kGroundTruth = 0,
  kEdges = 1,
  kRotationNoise = 2,
  kTranslationNoise = 3,
  kOutliers = 4,
};

std::size_t uniform_index(CounterRng& rng, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

template <typename T>
void shuffle(std::vector<T>& v, CounterRng& rng) {
  for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[uniform_index(rng, k)]);
}

Vec3 random_unit_vector(CounterRng& rng) {
  Vec3 g = rng.normal3();
  while (g.norm() < 1e-12) g = rng.normal3();
  return g.normalized();
}

std::vector<std::pair<std::size_t, std::size_t>> choose_edges(std::size_t n, std::size_t m,
                                                              CounterRng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  shuffle(perm, rng);

  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(m);
  auto add = [&](std::size_t a, std::size_t b) {
    const std::size_t i = std::min(a, b);
    const std::size_t j = std::max(a, b);
    used[i][j] = true;
    edges.emplace_back(i, j);
  };
  // Random recursive tree over a random node order.
  for (std::size_t k = 1; k < n; ++k) add(perm[k], perm[uniform_index(rng, k)]);

  std::vector<std::pair<std::size_t, std::size_t>> rest;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!used[i][j]) rest.emplace_back(i, j);
    }
  }
  shuffle(rest, rng);
  for (std::size_t k = 0; edges.size() < m && k < rest.size(); ++k) add(rest[k].first, rest[k].second);
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<BenchRow> run_cell(const std::string& name, const SynthConfig& base, double x,
                              std::size_t s, const SolveOptions& options,
                              void (*apply)(SynthConfig&, SolveOptions&, double)) {
  SynthConfig cfg = base;
  SolveOptions opts = options;
  cfg.seed = base.seed + s;
  apply(cfg, opts, x);
  SynthProblem problem;
  std::string gen_error;
  try {
    problem = generate(cfg);
  } catch (const std::exception& e) {
    gen_error = e.what();
  }
  const ModelParams model = matched_model(cfg);
  std::vector<BenchRow> rows;
  for (SolverKind solver : opts.solvers) {
    BenchRow row;
    if (gen_error.empty()) {
      row = solve_and_score(problem, model, solver, opts);
    } else {
      row.solver = to_string(solver);
      row.error = gen_error;
    }
    row.sweep = name;
    row.grid_value = x;
    row.seed = cfg.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Cells run on a small thread pool; each writes only its own slot, so the
// output order and values do not depend on scheduling.
std::vector<BenchRow> run_sweep(const std::string& name, const SynthConfig& base,
                                const std::vector<double>& grid, std::size_t seeds,
                                const SolveOptions& options,
                                void (*apply)(SynthConfig&, SolveOptions&, double)) {
  const std::size_t cells = grid.size() * seeds;
  std::vector<std::vector<BenchRow>> out(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells; k = next++) {
      out[k] = run_cell(name, base, grid[k / seeds], k % seeds, options, apply);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(cells, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<BenchRow> rows;
  for (auto& cell : out) {
    for (auto& r : cell) rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void SynthConfig::validate() const {
  if (nodes < 2) throw std::invalid_argument("synth: need at least 2 nodes");
  if (!(completeness > 0.0 && completeness <= 1.0)) {
    throw std::invalid_argument("synth: completeness must lie in (0, 1]");
  }
  if (!noiseless_rotations()) {
    if (!(noise_lambda[0] <= 0.0 && noise_lambda[1] <= noise_lambda[0] &&
          noise_lambda[2] <= noise_lambda[1])) {
      throw std::invalid_argument("synth: noise_lambda must satisfy 0 >= l1 >= l2 >= l3");
    }
  }
  if (!(noise_sigma2 >= 0.0) || !std::isfinite(noise_sigma2)) {
    throw std::invalid_argument("synth: noise_sigma2 must be >= 0");
  }
  if (!(outlier_ratio >= 0.0 && outlier_ratio < 1.0)) {
    throw std::invalid_argument("synth: outlier_ratio must lie in [0, 1)");
  }
  if (!(scene_scale >= 0.0)) throw std::invalid_argument("synth: scene_scale must be >= 0");
}

std::size_t target_edge_count(std::size_t n, double completeness) {
  const std::size_t full = n * (n - 1) / 2;
  const auto kept = static_cast<std::size_t>(std::llround(completeness * static_cast<double>(full)));
  return std::min(full, std::max(n - 1, kept));
}

SynthProblem generate(const SynthConfig& config) {
  config.validate();
  const std::size_t n = config.nodes;

  std::vector<Pose> gt(n);
  {
    CounterRng rng(config.seed, kGroundTruth);
    const BinghamParams gt_dist(config.ground_truth_lambda, UnitQuaternion::Identity());
    for (std::size_t i = 0; i < n; ++i) {
      gt[i].rotation = config.bingham_ground_truth ? sample_one(gt_dist, rng) : uniform_quaternion(rng);
      gt[i].translation = config.scene_scale * rng.normal3();
    }
  }
  // Gauge: node 0 at the identity.
  gt = Estimate{gt}.pinned().poses;

  CounterRng edge_rng(config.seed, kEdges);
  const auto pairs = choose_edges(n, target_edge_count(n, config.completeness), edge_rng);

  CounterRng rot_rng(config.seed, kRotationNoise);
  CounterRng trans_rng(config.seed, kTranslationNoise);
  const double sigma = std::sqrt(config.noise_sigma2);
  std::vector<MeasurementEdge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    MeasurementEdge e{i, j, relative_pose(gt[i], gt[j])};
    if (!config.noiseless_rotations()) {
      e.rel.rotation = sample_one(BinghamParams(config.noise_lambda, e.rel.rotation), rot_rng);
    }
    if (sigma > 0.0) e.rel.translation += sigma * trans_rng.normal3();
    edges.push_back(e);
  }

  SynthProblem out;
  CounterRng out_rng(config.seed, kOutliers);
  const auto n_out =
      static_cast<std::size_t>(std::llround(config.outlier_ratio * static_cast<double>(edges.size())));
  std::vector<std::size_t> idx(edges.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  shuffle(idx, out_rng);
  idx.resize(n_out);
  std::sort(idx.begin(), idx.end());
  constexpr double kDeg = std::numbers::pi / 180.0;
  for (std::size_t k : idx) {
    const double angle = (60.0 + 20.0 * out_rng.uniform()) * kDeg;
    const UnitQuaternion corrupt = UnitQuaternion::FromAxisAngle(random_unit_vector(out_rng), angle);
    auto& rel = edges[k].rel;
    rel.rotation = corrupt * rel.rotation;
    rel.translation += out_rng.uniform() * random_unit_vector(out_rng);
  }
  out.outlier_edges = std::move(idx);
  out.graph = PoseGraph(n, std::move(edges), std::move(gt));
  return out;
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::kTgmcmc:
      return "tgmcmc";
    case SolverKind::kMst:
      return "mst";
    case SolverKind::kPgd:
      return "pgd";
  }
  return "unknown";
}

SolverKind parse_solver(const std::string& s) {
  if (s == "tgmcmc") return SolverKind::kTgmcmc;
  if (s == "mst") return SolverKind::kMst;
  if (s == "pgd") return SolverKind::kPgd;
  throw std::invalid_argument("unknown solver '" + s + "'");
}

ModelParams matched_model(const SynthConfig& config) {
  ModelParams m;
  if (!config.noiseless_rotations()) m.data_lambda = config.noise_lambda;
  if (config.noise_sigma2 > 0.0) m.sigma2 = config.noise_sigma2;
  return m;
}

BenchRow solve_and_score(const SynthProblem& problem, const ModelParams& model, SolverKind solver,
                         const SolveOptions& options) {
  BenchRow row;
  row.solver = to_string(solver);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const PoseGraph& g = problem.graph;
    const Estimate init = mst_propagate(g);
    Estimate est;
    switch (solver) {
      case SolverKind::kMst:
        est = init;
        row.u_final = potential_U(g, est, model);
        break;
      case SolverKind::kTgmcmc: {
        auto [e, rep] = optimize(g, model, options.sampler, init);
        est = std::move(e);
        row.u_final = rep.best_u;
        break;
      }
      case SolverKind::kPgd: {
        const auto grid = options.pgd_grid.empty() ? default_pgd_grid() : options.pgd_grid;
        auto res = pgd_best_over_grid(g, model, options.sampler.iterations, 0.5 * options.sampler.h,
                                      grid, init);
        est = std::move(res.estimate);
        row.u_final = res.report.best_u;
        break;
      }
    }
    const Estimate gt{*g.ground_truth()};
    row.mre = mean_rotation_error(est, gt);
    row.mte = mean_translation_error(est, gt);
    row.gc = graph_consistency(g, est);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<BenchRow> sweep_noise(const SynthConfig& base, const std::vector<double>& grid,
                                  std::size_t seeds, const SolveOptions& options) {
  return run_sweep("noise", base, grid, seeds, options, [](SynthConfig& c, SolveOptions&, double x) {
    c.noise_lambda = Vec3::Constant(-x);
  });
}

std::vector<BenchRow> sweep_completeness(const SynthConfig& base, const std::vector<double>& grid,
                                         std::size_t seeds, const SolveOptions& options) {
  return run_sweep("completeness", base, grid, seeds, options,
                   [](SynthConfig& c, SolveOptions&, double x) { c.completeness = x; });
}

std::vector<BenchRow> sweep_outliers(const SynthConfig& base, const std::vector<double>& grid,
                                     std::size_t seeds, const SolveOptions& options) {
  return run_sweep("outliers", base, grid, seeds, options,
                   [](SynthConfig& c, SolveOptions&, double x) { c.outlier_ratio = x; });
}

std::vector<BenchRow> sweep_iterations(const SynthConfig& base, const std::vector<double>& grid,
                                       std::size_t seeds, const SolveOptions& options) {
  return run_sweep("pgd", base, grid, seeds, options, [](SynthConfig&, SolveOptions& o, double x) {
    o.sampler.iterations = static_cast<std::size_t>(std::max(1.0, std::round(x)));
  });
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "sweep,grid_value,seed,solver,mre_rad,mte,g_c,u_final,wall_seconds,error\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.sweep) << ',' << format_double(r.grid_value) << ',' << r.seed << ','
        << csv_field(r.solver) << ',' << format_double(r.mre) << ',' << format_double(r.mte) << ','
        << format_double(r.gc) << ',' << format_double(r.u_final) << ','
        << format_double(r.wall_seconds) << ',' << csv_field(r.error) << "\r\n";
  }
}

}  // namespace tgmc
