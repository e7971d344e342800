#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "tgmc/baselines.hpp"
#include "tgmc/g2o_io.hpp"
#include "tgmc/metrics.hpp"
#include "tgmc/sampler.hpp"
#include "tgmc/synth.hpp"

namespace tgmc::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kInitStream = 0x1417;

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Flag structs. Defaults are the documented CLI defaults.

struct NoiseFlags {
  std::vector<double> lambda{350.0};  // magnitudes; one value means isotropic
  double sigma2 = 0.01;
};

struct GenerateFlags {
  std::size_t nodes = 20;
  double completeness = 0.5;
  NoiseFlags noise;
  double outliers = 0.0;
  double scale = 1.0;
  bool noiseless = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct ChainFlags {
  double h = 0.004;
  double c = 1000.0;
  std::uint64_t seed = 0;
  std::string init = "mst";
  NoiseFlags model;
};

struct SolveFlags {
  std::string graph;
  std::string solver = "tgmcmc";
  std::size_t iters = 500;
  ChainFlags chain;
  std::string out;
  std::string report;
};

struct SampleFlags {
  std::string graph;
  std::size_t opt_iters = 400;
  double beta = 1000.0;
  std::size_t samples = 40;
  std::size_t thin = 10;
  std::optional<std::size_t> burn_in;
  bool reset_momenta = false;
  ChainFlags chain;
  std::string out;
};

struct EvaluateFlags {
  std::string estimate;
  std::string truth;
  std::string graph;
};

struct BenchFlags {
  std::string sweep;
  std::vector<double> grid;
  std::size_t seeds = 10;
  std::size_t nodes = 20;
  double completeness = 0.5;
  NoiseFlags noise;
  double outliers = 0.0;
  std::uint64_t seed = 0;
  std::size_t iters = 500;
  double h = 0.004;
  double c = 1000.0;
  std::vector<std::string> solvers{"tgmcmc", "mst", "pgd"};
  std::string out = "-";
};

void add_noise_flags(CLI::App* app, NoiseFlags& f, const std::string& what) {
  app->add_option("--lambda", f.lambda,
                  what + " rotation concentration magnitudes: one value or three, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--sigma2", f.sigma2, what + " translation variance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_chain_flags(CLI::App* app, ChainFlags& f) {
  app->add_option("--h", f.h, "step size")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--c", f.c, "friction")->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--seed", f.seed, "random seed")->capture_default_str();
  app->add_option("--init", f.init, "initial estimate")
      ->check(CLI::IsMember({"mst", "random", "identity"}))
      ->capture_default_str();
  add_noise_flags(app, f.model, "model");
}

Vec3 lambda_vector(const std::vector<double>& mags) {
  if (mags.size() != 1 && mags.size() != 3) {
    throw CommandError("--lambda takes one or three values");
  }
  std::vector<double> m;
  for (double x : mags) {
    if (!std::isfinite(x)) throw CommandError("--lambda values must be finite");
    m.push_back(std::abs(x));
  }
  if (m.size() == 1) m = {m[0], m[0], m[0]};
  std::sort(m.begin(), m.end());
  return {-m[0], -m[1], -m[2]};
}

ModelParams model_params(const NoiseFlags& f) {
  ModelParams p;
  p.data_lambda = lambda_vector(f.lambda);
  p.sigma2 = f.sigma2;
  p.validate();
  return p;
}

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

Json trace_summary(const std::vector<double>& trace) {
  Json j;
  j["length"] = trace.size();
  if (trace.empty()) {
    j["first"] = nullptr;
    j["last"] = nullptr;
    j["min"] = nullptr;
    j["max"] = nullptr;
    return j;
  }
  j["first"] = trace.front();
  j["last"] = trace.back();
  j["min"] = *std::min_element(trace.begin(), trace.end());
  j["max"] = *std::max_element(trace.begin(), trace.end());
  return j;
}

Json metrics_json(const PoseGraph& g, const Estimate& est, const Estimate* truth) {
  Json j;
  if (truth) {
    j["mre_rad"] = mean_rotation_error(est, *truth);
    j["mte"] = mean_translation_error(est, *truth);
  } else {
    j["mre_rad"] = nullptr;
    j["mte"] = nullptr;
  }
  j["g_c"] = graph_consistency(g, est);
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CommandError("cannot write " + path.string());
  f << text;
  if (!f) throw CommandError("write failed for " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

PoseGraph load_valid_graph(const std::string& path) {
  if (!fs::exists(path)) throw CommandError("graph file not found: " + path);
  PoseGraph g = load_g2o(path);
  const ValidationReport report = validate(g);
  if (!report.ok()) throw CommandError("invalid graph " + path + ": " + report.summary());
  return g;
}

Estimate initial_estimate(const PoseGraph& g, const std::string& kind, std::uint64_t seed) {
  if (kind == "mst") return mst_propagate(g);
  Estimate est;
  est.poses.assign(g.node_count(), Pose::Identity());
  if (kind == "random") {
    CounterRng rng(seed, kInitStream);
    for (auto& p : est.poses) {
      p.rotation = uniform_quaternion(rng);
      p.translation = rng.normal3();
    }
    est = est.pinned();
  }
  return est;
}

SamplerConfig sampler_config(const ChainFlags& f, std::size_t iterations) {
  SamplerConfig cfg;
  cfg.h = f.h;
  cfg.c = f.c;
  cfg.seed = f.seed;
  cfg.iterations = iterations;
  cfg.validate();
  return cfg;
}

Json chain_json(const ChainFlags& f, const ModelParams& model) {
  Json j;
  j["h"] = f.h;
  j["c"] = f.c;
  j["init"] = f.init;
  j["lambda"] = vec_json(model.data_lambda);
  j["sigma2"] = model.sigma2;
  j["integrator"] = SamplerConfig::kOrder;
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  SynthConfig cfg;
  cfg.nodes = f.nodes;
  cfg.completeness = f.completeness;
  cfg.outlier_ratio = f.outliers;
  cfg.scene_scale = f.scale;
  cfg.seed = f.seed;
  if (f.noiseless) {
    cfg.noise_lambda = Vec3::Constant(-std::numeric_limits<double>::infinity());
    cfg.noise_sigma2 = 0.0;
  } else {
    cfg.noise_lambda = lambda_vector(f.noise.lambda);
    cfg.noise_sigma2 = f.noise.sigma2;
  }
  const SynthProblem prob = generate(cfg);
  const fs::path graph_path = f.out + ".g2o";
  if (graph_path.has_parent_path()) fs::create_directories(graph_path.parent_path());
  save_g2o(graph_path, prob.graph);

  Json j;
  j["graph"] = graph_path.string();
  j["truth"] = ground_truth_path(graph_path).string();
  j["nodes"] = prob.graph.node_count();
  j["edges"] = prob.graph.edges().size();
  j["outliers"] = prob.outlier_edges.size();
  j["seed"] = f.seed;
  out << j.dump() << "\n";
  return kOk;
}

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const PoseGraph g = load_valid_graph(f.graph);
  const ModelParams model = model_params(f.chain.model);
  const SolverKind solver = parse_solver(f.solver);
  const SamplerConfig cfg = sampler_config(f.chain, f.iters);
  const Estimate init = initial_estimate(g, f.chain.init, f.chain.seed);

  Estimate est;
  Json result;
  switch (solver) {
    case SolverKind::kMst: {
      est = mst_propagate(g);
      const double u = potential_U(g, est, model);
      result["u_initial"] = u;
      result["u_final"] = u;
      result["best_iteration"] = 0;
      result["u_trace"] = trace_summary({});
      break;
    }
    case SolverKind::kTgmcmc: {
      auto [e, rep] = optimize(g, model, cfg, init);
      est = std::move(e);
      result["u_initial"] = rep.initial_u;
      result["u_final"] = rep.best_u;
      result["best_iteration"] = rep.best_iteration;
      result["u_trace"] = trace_summary(rep.u_trace);
      result["final_momentum_norm"] = rep.momentum_norm.empty() ? 0.0 : rep.momentum_norm.back();
      break;
    }
    case SolverKind::kPgd: {
      auto res = pgd_best_over_grid(g, model, f.iters, 0.5 * f.chain.h, default_pgd_grid(), init);
      est = std::move(res.estimate);
      result["u_initial"] = res.report.initial_u;
      result["u_final"] = res.report.best_u;
      result["best_iteration"] = res.report.best_iteration;
      result["u_trace"] = trace_summary(res.report.u_trace);
      result["pgd_step_size"] = res.step_size;
      result["pgd_diverged_steps"] = res.failures;
      break;
    }
  }
  est = est.pinned();

  const fs::path est_path = f.out;
  if (est_path.has_parent_path()) fs::create_directories(est_path.parent_path());
  save_vertices(est_path, est.poses);

  std::optional<Estimate> truth;
  if (g.ground_truth()) truth = Estimate{*g.ground_truth()};
  result["metrics"] = metrics_json(g, est, truth ? &*truth : nullptr);

  Json report = header("solve");
  Json config;
  config["graph"] = f.graph;
  config["solver"] = f.solver;
  config["iters"] = f.iters;
  config.update(chain_json(f.chain, model));
  config["rng"] = CounterRng::kName;
  report["config"] = config;
  report["seed"] = f.chain.seed;
  report["nodes"] = g.node_count();
  report["edges"] = g.edges().size();
  report["estimate"] = est_path.string();
  report["result"] = result;
  report["timing"] = {{"wall_seconds", seconds_since(t0)}};

  const fs::path report_path =
      f.report.empty() ? fs::path(f.out).replace_extension(".json") : fs::path(f.report);
  write_json(report_path, report);
  Json line;
  line["estimate"] = est_path.string();
  line["report"] = report_path.string();
  line["u_final"] = result["u_final"];
  line["metrics"] = result["metrics"];
  out << line.dump() << "\n";
  return kOk;
}

int cmd_sample(const SampleFlags& f, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const PoseGraph g = load_valid_graph(f.graph);
  const ModelParams model = model_params(f.chain.model);
  SamplerConfig cfg = sampler_config(f.chain, f.opt_iters);
  const Estimate init = initial_estimate(g, f.chain.init, f.chain.seed);

  SamplerState state;
  auto [opt_est, opt_rep] = optimize(g, model, cfg, init, &state);
  if (f.reset_momenta) {
    for (auto& v : state.rot_momentum) v.setZero();
    for (auto& v : state.trans_momentum) v.setZero();
  }
  cfg.beta = f.beta;
  SampleSchedule schedule;
  schedule.count = f.samples;
  schedule.thin = f.thin;
  schedule.burn_in = f.burn_in;
  RunReport sample_rep;
  const std::vector<Estimate> samples =
      sample_posterior(g, model, cfg, init, schedule, &state, &sample_rep);
  const std::vector<NodeUncertainty> stats = uncertainty_stats(samples);

  Estimate mean;
  for (const auto& s : stats) mean.poses.push_back({s.rotation_mean, s.translation_mean});

  const fs::path mean_path = f.out + ".mean.g2o";
  const fs::path samples_path = f.out + ".samples.g2o";
  const fs::path json_path = f.out + ".uncertainty.json";
  if (mean_path.has_parent_path()) fs::create_directories(mean_path.parent_path());
  save_vertices(mean_path, mean.poses);
  {
    std::ostringstream text;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      text << "# SAMPLE " << k << "\n";
      write_vertices(text, samples[k].poses);
    }
    write_text(samples_path, text.str());
  }

  Json nodes = Json::array();
  double max_dispersion = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    Json cov = Json::array();
    for (int r = 0; r < 3; ++r) {
      cov.push_back(Json::array({s.translation_covariance(r, 0), s.translation_covariance(r, 1),
                                 s.translation_covariance(r, 2)}));
    }
    const Vec4& q = s.rotation_mean.coeffs();
    Json node;
    node["id"] = i;
    node["rotation_mean_wxyz"] = Json::array({q[0], q[1], q[2], q[3]});
    node["rotation_dispersion"] = s.rotation_dispersion;
    node["translation_mean"] = vec_json(s.translation_mean);
    node["translation_covariance"] = cov;
    nodes.push_back(node);
    max_dispersion = std::max(max_dispersion, s.rotation_dispersion);
  }

  Json report = header("sample");
  Json config;
  config["graph"] = f.graph;
  config["opt_iters"] = f.opt_iters;
  config["beta"] = f.beta;
  config["samples"] = f.samples;
  config["thin"] = f.thin;
  config["burn_in"] = f.burn_in.value_or(f.thin);
  config["reset_momenta"] = f.reset_momenta;
  config.update(chain_json(f.chain, model));
  config["rng"] = CounterRng::kName;
  report["config"] = config;
  report["seed"] = f.chain.seed;
  report["optimize"] = {{"u_initial", opt_rep.initial_u},
                        {"u_best", opt_rep.best_u},
                        {"u_trace", trace_summary(opt_rep.u_trace)}};
  report["sampling"] = {{"u_trace", trace_summary(sample_rep.u_trace)},
                        {"sweeps", sample_rep.u_trace.size()}};
  std::optional<Estimate> truth;
  if (g.ground_truth()) truth = Estimate{*g.ground_truth()};
  report["mean_metrics"] = metrics_json(g, mean, truth ? &*truth : nullptr);
  report["nodes"] = nodes;
  report["timing"] = {{"wall_seconds", seconds_since(t0)}};
  write_json(json_path, report);

  Json line;
  line["mean"] = mean_path.string();
  line["samples"] = samples_path.string();
  line["uncertainty"] = json_path.string();
  line["count"] = samples.size();
  line["max_rotation_dispersion"] = max_dispersion;
  out << line.dump() << "\n";
  return kOk;
}

int cmd_evaluate(const EvaluateFlags& f, std::ostream& out) {
  for (const auto& p : {f.estimate, f.truth}) {
    if (!fs::exists(p)) throw CommandError("file not found: " + p);
  }
  const Estimate est = load_vertices(f.estimate);
  const Estimate truth = load_vertices(f.truth);
  if (est.size() != truth.size()) {
    throw CommandError("node count mismatch: estimate has " + std::to_string(est.size()) +
                       ", truth has " + std::to_string(truth.size()));
  }
  Json j;
  j["mre_rad"] = mean_rotation_error(est, truth);
  j["mte"] = mean_translation_error(est, truth);
  if (f.graph.empty()) {
    j["g_c"] = nullptr;
  } else {
    const PoseGraph g = load_valid_graph(f.graph);
    if (g.node_count() != est.size()) {
      throw CommandError("node count mismatch: graph has " + std::to_string(g.node_count()) +
                         ", estimate has " + std::to_string(est.size()));
    }
    j["g_c"] = graph_consistency(g, est);
  }
  out << j.dump() << "\n";
  return kOk;
}

std::vector<double> default_grid(const std::string& sweep) {
  if (sweep == "noise") return {350, 500, 700, 900};
  if (sweep == "completeness") return {0.1, 0.2, 0.5, 1.0};
  if (sweep == "outliers") return {0, 0.05, 0.1, 0.2};
  return {50, 100, 200, 400};  // pgd: iteration budgets
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  SynthConfig base;
  base.nodes = f.nodes;
  base.completeness = f.completeness;
  base.noise_lambda = lambda_vector(f.noise.lambda);
  base.noise_sigma2 = f.noise.sigma2;
  base.outlier_ratio = f.outliers;
  base.seed = f.seed;
  base.validate();

  SolveOptions opts;
  opts.sampler.h = f.h;
  opts.sampler.c = f.c;
  opts.sampler.iterations = f.iters;
  opts.sampler.seed = f.seed;
  opts.sampler.validate();
  opts.solvers.clear();
  for (const auto& s : f.solvers) opts.solvers.push_back(parse_solver(s));

  const std::vector<double> grid = f.grid.empty() ? default_grid(f.sweep) : f.grid;
  std::vector<BenchRow> rows;
  if (f.sweep == "noise") {
    rows = sweep_noise(base, grid, f.seeds, opts);
  } else if (f.sweep == "completeness") {
    rows = sweep_completeness(base, grid, f.seeds, opts);
  } else if (f.sweep == "outliers") {
    rows = sweep_outliers(base, grid, f.seeds, opts);
  } else {
    rows = sweep_iterations(base, grid, f.seeds, opts);
  }

  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  if (f.out == "-") {
    write_csv(out, rows);
  } else {
    std::ostringstream csv;
    write_csv(csv, rows);
    write_text(f.out, csv.str());
    Json j;
    j["csv"] = f.out;
    j["rows"] = rows.size();
    j["failed_rows"] = failed;
    out << j.dump() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pose-graph estimation with tempered geodesic MCMC", "tgmc"};
  // "-h" would collide with the step-size flag.
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "write a synthetic pose graph and its ground truth");
  g->set_help_flag("--help", "print this help and exit");
  g->add_option("--nodes", gen.nodes, "number of poses")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
      ->capture_default_str();
  g->add_option("--completeness", gen.completeness, "fraction of node pairs kept as edges")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_noise_flags(g, gen.noise, "noise");
  g->add_flag("--noiseless", gen.noiseless, "exact measurements");
  g->add_option("--outliers", gen.outliers, "fraction of corrupted edges")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  g->add_option("--scale", gen.scale, "ground-truth translation std")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  g->add_option("--out", gen.out, "output prefix; writes PREFIX.g2o and PREFIX.gt.g2o")->required();

  SolveFlags sol;
  auto* s = app.add_subcommand("solve", "estimate absolute poses");
  s->set_help_flag("--help", "print this help and exit");
  s->add_option("--graph", sol.graph, "input g2o graph")->required();
  s->add_option("--solver", sol.solver, "solver")
      ->check(CLI::IsMember({"tgmcmc", "mst", "pgd"}))
      ->capture_default_str();
  s->add_option("--iters", sol.iters, "iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_chain_flags(s, sol.chain);
  s->add_option("--out", sol.out, "estimate file (g2o vertices)")->required();
  s->add_option("--report", sol.report, "JSON report path (default: OUT with a .json extension)");

  SampleFlags smp;
  auto* m = app.add_subcommand("sample", "optimize, then draw posterior samples");
  m->set_help_flag("--help", "print this help and exit");
  m->add_option("--graph", smp.graph, "input g2o graph")->required();
  m->add_option("--opt-iters", smp.opt_iters, "optimization sweeps")->capture_default_str();
  m->add_option("--beta", smp.beta, "inverse temperature while sampling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  m->add_option("--samples", smp.samples, "retained samples")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  m->add_option("--thin", smp.thin, "sweeps between samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  m->add_option("--burn-in", smp.burn_in, "sweeps before the first sample (default: thin)");
  m->add_flag("--reset-momenta", smp.reset_momenta, "zero the momenta before sampling");
  add_chain_flags(m, smp.chain);
  m->add_option("--out", smp.out, "output prefix")->required();

  EvaluateFlags ev;
  auto* e = app.add_subcommand("evaluate", "score an estimate against ground truth");
  e->set_help_flag("--help", "print this help and exit");
  e->add_option("--estimate", ev.estimate, "estimate g2o file")->required();
  e->add_option("--truth", ev.truth, "ground-truth g2o file")->required();
  e->add_option("--graph", ev.graph, "measurement graph, for graph consistency");

  BenchFlags bn;
  auto* b = app.add_subcommand("bench", "synthetic benchmark sweep to CSV");
  b->set_help_flag("--help", "print this help and exit");
  b->add_option("--sweep", bn.sweep, "swept parameter")
      ->check(CLI::IsMember({"noise", "completeness", "outliers", "pgd"}))
      ->required();
  b->add_option("--grid", bn.grid, "comma separated grid values")->delimiter(',');
  b->add_option("--seeds", bn.seeds, "seeds per grid value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--nodes", bn.nodes, "number of poses")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
      ->capture_default_str();
  b->add_option("--completeness", bn.completeness, "edge fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_noise_flags(b, bn.noise, "noise");
  b->add_option("--outliers", bn.outliers, "outlier fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  b->add_option("--seed", bn.seed, "first seed")->capture_default_str();
  b->add_option("--iters", bn.iters, "iterations for iterative solvers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--h", bn.h, "step size")->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--c", bn.c, "friction")->check(CLI::NonNegativeNumber)->capture_default_str();
  b->add_option("--solvers", bn.solvers, "comma separated solvers")
      ->delimiter(',')
      ->check(CLI::IsMember({"tgmcmc", "mst", "pgd"}));
  b->add_option("--out", bn.out, "CSV path, - for stdout")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*s) return cmd_solve(sol, out);
    if (*m) return cmd_sample(smp, out);
    if (*e) return cmd_evaluate(ev, out);
    if (*b) return cmd_bench(bn, out);
  } catch (const CommandError& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace tgmc::cli
