// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "cli.hpp"
#include "oracles/potential_fd.hpp"
#include "oracles/s3_quadrature.hpp"
#include "tgmc/baselines.hpp"
#include "tgmc/bingham.hpp"
#include "tgmc/g2o_io.hpp"
#include "tgmc/metrics.hpp"
#include "tgmc/sampler.hpp"
#include "tgmc/synth.hpp"

using namespace tgmc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; <= 0 means none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Estimate random_estimate(std::size_t n, CounterRng& rng) {
  Estimate e;
  for (std::size_t i = 0; i < n; ++i) e.poses.push_back({uniform_quaternion(rng), rng.normal3()});
  return e;
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < idx.size();) {
    std::size_t e = k;
    while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[k]]) ++e;
    for (std::size_t m = k; m <= e; ++m) r[idx[m]] = 0.5 * static_cast<double>(k + e);
    k = e + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------

Outcome gradient_oracle() {
  ModelParams p;
  p.data_lambda = Vec3(-350, -400, -450);
  p.sigma2 = 0.01;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthConfig cfg;
    cfg.nodes = 5;
    cfg.completeness = 0.8;  // 8 of 10 pairs
    cfg.noise_lambda = p.data_lambda;
    cfg.noise_sigma2 = p.sigma2;
    cfg.seed = seed;
    const auto prob = generate(cfg);
    if (prob.graph.edges().size() != 8) return {false, "unexpected edge count"};
    CounterRng rng(seed, 99);
    worst = std::max(worst, oracle::gradient_check(prob.graph, random_estimate(5, rng), p));
  }
  return {worst < 1e-5, "max relative error " + fmt("%.3g", worst) + " over 20 graphs"};
}

Outcome manifold_invariants() {
  SynthConfig cfg;
  cfg.nodes = 20;
  cfg.seed = 11;
  const auto prob = generate(cfg);
  SamplerConfig sc;
  sc.beta = 1000.0;  // keep the noise on
  sc.seed = 11;
  sc.random_initial_momenta = true;
  CounterRng rng(11, 5);
  SamplerState s = SamplerState::FromEstimate(random_estimate(20, rng).pinned(), sc);
  const ModelParams model = matched_model(cfg);
  for (int k = 0; k < 1000; ++k) sweep(s, prob.graph, model, sc);
  const double norm = max_norm_residual(s);
  const double tang = max_tangency_residual(s);
  return {norm < 1e-9 && tang < 1e-9,
          "max | |q|-1 | = " + fmt("%.3g", norm) + ", max |q.v| = " + fmt("%.3g", tang)};
}

Outcome exact_recovery() {
  SynthConfig cfg;
  cfg.nodes = 20;
  cfg.completeness = 0.5;
  cfg.noise_lambda = Vec3::Constant(-INFINITY);
  cfg.noise_sigma2 = 0.0;
  cfg.seed = 3;
  const auto prob = generate(cfg);
  const Estimate gt{*prob.graph.ground_truth()};
  SamplerConfig sc;
  sc.iterations = 800;
  const Estimate est = optimize(prob.graph, matched_model(cfg), sc, mst_propagate(prob.graph)).first;
  const double mre = mean_rotation_error(est, gt);
  const double mte = mean_translation_error(est, gt);
  const double gc = graph_consistency(prob.graph, est);
  return {mre < 1e-3 && mte < 1e-3 && gc > 0.9999,
          "MRE " + fmt("%.3g", mre) + " rad, MTE " + fmt("%.3g", mte) + ", g_c " + fmt("%.12g", gc)};
}

Outcome tempering() {
  const std::vector<double> ladder = {1.0, 10.0, 100.0, 1000.0};
  int ok = 0;
  std::string worst;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed, 7);
    const Pose rel{uniform_quaternion(rng), rng.normal3()};
    const PoseGraph g(2, {{0, 1, rel}});
    const ModelParams model;  // lambda 350, sigma2 0.01
    const Estimate init{{Pose::Identity(), compose(rel, Pose::Identity())}};
    double prev = INFINITY;
    bool decreasing = true;
    std::string row;
    for (double beta : ladder) {
      SamplerConfig sc;
      sc.beta = beta;
      sc.seed = seed * 1000 + static_cast<std::uint64_t>(beta);
      SampleSchedule sch;
      sch.count = 2000;
      sch.thin = 10;
      sch.burn_in = 500;
      const double d = uncertainty_stats(sample_posterior(g, model, sc, init, sch))[1].rotation_dispersion;
      row += " " + fmt("%.3g", d);
      decreasing = decreasing && d < prev;
      prev = d;
    }
    if (decreasing) {
      ++ok;
    } else {
      worst = row;
    }
  }
  std::string detail = std::to_string(ok) + "/10 seeds strictly decreasing";
  if (!worst.empty()) detail += " (a failing ladder:" + worst + ")";
  return {ok >= 9, detail};
}

Outcome sampling_correctness() {
  const Vec3 lambda(-10, -20, -30);
  CounterRng rng(5, 5);
  ModelParams p;
  p.prior_lambda = lambda;
  p.prior_mode = uniform_quaternion(rng);
  p.prior_sigma2 = 1.0;
  const PoseGraph g(2, {});
  SamplerConfig sc;
  sc.c = 1.0;
  sc.h = 0.01;
  sc.beta = 1.0;
  sc.seed = 5;
  SampleSchedule sch;
  sch.count = 100000;
  sch.thin = 20;
  sch.burn_in = 1000;
  const auto samples = sample_posterior(g, p, sc, Estimate{{Pose{}, Pose{}}}, sch);
  const Mat4 v = v_matrix(p.prior_mode);
  Eigen::Vector4d m = Eigen::Vector4d::Zero();
  for (const auto& s : samples) m += (v.transpose() * s.poses[1].rotation.coeffs()).cwiseAbs2();
  m /= static_cast<double>(samples.size());
  const Eigen::Vector4d ref = oracle::bingham_frame_moments(lambda, 200);
  double worst = 0.0;
  std::string detail;
  for (int k = 1; k < 4; ++k) {
    const double rel = std::abs(m[k] - ref[k]) / ref[k];
    worst = std::max(worst, rel);
    detail += fmt(" %.5f", m[k]) + fmt("/%.5f", ref[k]);
  }
  return {worst < 0.05, "sample/quadrature" + detail + ", worst " + fmt("%.2f%%", 100 * worst) +
                            " (c = 1, h = 0.01)"};
}

Outcome bingham_oracle() {
  const std::vector<Vec3> settings = {Vec3(-1, -2, -3), Vec3(-10, -20, -30), Vec3(-50, -100, -200)};
  double worst = 0.0;
  std::string detail;
  CounterRng rng(6, 6);
  for (const Vec3& lambda : settings) {
    const BinghamParams p(lambda, uniform_quaternion(rng));
    const Mat4 v = v_matrix(p.mode());
    Eigen::Vector4d m = Eigen::Vector4d::Zero();
    const auto qs = sample(p, rng, 1000000);
    for (const auto& q : qs) m += (v.transpose() * q.coeffs()).cwiseAbs2();
    m /= static_cast<double>(qs.size());
    const Eigen::Vector4d ref = oracle::bingham_frame_moments(lambda, 200);
    double w = 0.0;
    for (int k = 0; k < 4; ++k) w = std::max(w, std::abs(m[k] - ref[k]) / ref[k]);
    detail += " " + fmt("%.2f%%", 100 * w);
    worst = std::max(worst, w);
  }
  return {worst < 0.02, "worst relative moment error per setting:" + detail};
}

struct BaselineTally {
  int u_wins = 0;
  int mre_wins = 0;
  std::string detail;
};

BaselineTally baseline_tally(double c) {
  BaselineTally t;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig cfg;
    cfg.nodes = 50;
    cfg.completeness = 0.5;
    cfg.noise_lambda = Vec3::Constant(-350.0);
    cfg.noise_sigma2 = 0.01;
    cfg.seed = seed;
    const auto prob = generate(cfg);
    const ModelParams model = matched_model(cfg);
    SolveOptions opts;
    opts.sampler.c = c;
    opts.sampler.seed = seed;
    const BenchRow tg = solve_and_score(prob, model, SolverKind::kTgmcmc, opts);
    const BenchRow pgd = solve_and_score(prob, model, SolverKind::kPgd, opts);
    const BenchRow mst = solve_and_score(prob, model, SolverKind::kMst, opts);
    if (!tg.error.empty() || !pgd.error.empty() || !mst.error.empty()) {
      t.detail += " seed " + std::to_string(seed) + " error: " + tg.error + pgd.error + mst.error;
      continue;
    }
    t.u_wins += tg.u_final <= pgd.u_final;
    t.mre_wins += tg.mre <= mst.mre;
  }
  return t;
}

Outcome baseline_ordering() {
  const BaselineTally d = baseline_tally(1000.0);
  const BaselineTally low = baseline_tally(10.0);
  std::printf("       info: with c = 10 instead, U %d/10 and MRE %d/10\n", low.u_wins, low.mre_wins);
  return {d.u_wins >= 8 && d.mre_wins >= 8,
          "U(TG) <= U(PGD grid) on " + std::to_string(d.u_wins) + "/10, MRE(TG) <= MRE(MST) on " +
              std::to_string(d.mre_wins) + "/10" + d.detail};
}

Outcome monotone_trends() {
  SynthConfig base;  // n 20, e 0.5, lambda 350, sigma2 0.01
  SolveOptions opts;
  opts.solvers = {SolverKind::kTgmcmc};
  auto averaged = [](const std::vector<BenchRow>& rows, const std::vector<double>& grid, bool& ok) {
    std::vector<double> mean(grid.size(), 0.0);
    std::vector<int> count(grid.size(), 0);
    for (const auto& r : rows) {
      if (!r.error.empty()) ok = false;
      const auto k = std::find(grid.begin(), grid.end(), r.grid_value) - grid.begin();
      mean[k] += r.mre;
      ++count[k];
    }
    for (std::size_t k = 0; k < grid.size(); ++k) mean[k] /= count[k];
    return mean;
  };
  bool ok = true;
  // Concentration magnitudes; the distortion is the noise variance, roughly 1 / lambda.
  const std::vector<double> lambdas = {1000, 600, 350, 200, 100};
  const auto noise_mre = averaged(sweep_noise(base, lambdas, 10, opts), lambdas, ok);
  std::vector<double> variance;
  for (double l : lambdas) variance.push_back(1.0 / l);
  const std::vector<double> ratios = {0, 0.05, 0.1, 0.2, 0.3};
  const auto outlier_mre = averaged(sweep_outliers(base, ratios, 10, opts), ratios, ok);
  const double rho_noise = spearman(variance, noise_mre);
  const double rho_out = spearman(ratios, outlier_mre);
  std::string detail = "rho(noise) " + fmt("%.3f", rho_noise) + ", rho(outliers) " + fmt("%.3f", rho_out);
  detail += "; MRE vs noise";
  for (double m : noise_mre) detail += fmt(" %.4f", m);
  detail += "; vs outliers";
  for (double m : outlier_mre) detail += fmt(" %.4f", m);
  return {ok && rho_noise > 0.9 && rho_out > 0.9, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("tgmc_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ostringstream out, err;
  auto run = [&](std::vector<std::string> args) { return cli::run(args, out, err); };
  Outcome o;
  if (run({"generate", "--nodes", "20", "--seed", "7", "--out", (dir / "g").string()}) != 0) {
    o.detail = "generate failed: " + err.str();
  } else {
    for (const std::string tag : {"a", "b"}) {
      run({"solve", "--graph", (dir / "g.g2o").string(), "--seed", "7", "--init", "random", "--out",
           (dir / (tag + ".g2o")).string()});
    }
    using Json = nlohmann::ordered_json;
    Json a = Json::parse(slurp(dir / "a.json"), nullptr, false);
    Json b = Json::parse(slurp(dir / "b.json"), nullptr, false);
    if (a.is_discarded() || b.is_discarded()) {
      o.detail = "solve failed: " + err.str();
    } else {
      for (Json* j : {&a, &b}) {
        j->erase("timing");
        j->erase("estimate");
      }
      const bool same_est = slurp(dir / "a.g2o") == slurp(dir / "b.g2o");
      const bool same_report = a.dump() == b.dump();
      o.pass = same_est && same_report;
      o.detail = std::string("estimate files ") + (same_est ? "identical" : "DIFFER") +
                 ", report numeric fields " + (same_report ? "identical" : "DIFFER");
    }
  }
  fs::remove_all(dir);
  return o;
}

double max_pose_difference(const std::vector<Pose>& a, const std::vector<Pose>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, (a[k].rotation.coeffs() - b[k].rotation.coeffs()).cwiseAbs().maxCoeff());
    m = std::max(m, (a[k].translation - b[k].translation).cwiseAbs().maxCoeff());
  }
  return m;
}

Outcome g2o_round_trip() {
  const fs::path dir = fs::temp_directory_path() / ("tgmc_roundtrip_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  double worst = 0.0;
  bool structure_ok = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthConfig cfg;
    cfg.nodes = 2 + seed % 30;
    cfg.completeness = 0.1 + 0.009 * static_cast<double>(seed);
    cfg.outlier_ratio = (seed % 4) * 0.05;
    cfg.scene_scale = 1.0 + static_cast<double>(seed % 7) * 10.0;
    cfg.seed = seed;
    const PoseGraph g0 = generate(cfg).graph;
    save_g2o(dir / "a.g2o", g0);
    const PoseGraph g1 = load_g2o(dir / "a.g2o");
    save_g2o(dir / "b.g2o", g1);
    const PoseGraph g2 = load_g2o(dir / "b.g2o");
    for (const PoseGraph* g : {&g1, &g2}) {
      if (g->edges().size() != g0.edges().size() || g->node_count() != g0.node_count()) {
        structure_ok = false;
        continue;
      }
      std::vector<Pose> m0, m1;
      for (std::size_t k = 0; k < g0.edges().size(); ++k) {
        structure_ok = structure_ok && g->edges()[k].i == g0.edges()[k].i && g->edges()[k].j == g0.edges()[k].j;
        m0.push_back(g0.edges()[k].rel);
        m1.push_back(g->edges()[k].rel);
      }
      worst = std::max(worst, max_pose_difference(m0, m1));
      worst = std::max(worst, max_pose_difference(*g0.ground_truth(), *g->ground_truth()));
    }
  }
  fs::remove_all(dir);
  return {structure_ok && worst < 1e-9,
          "max abs pose difference " + fmt("%.3g", worst) + " over 100 graphs" +
              (structure_ok ? "" : ", STRUCTURE MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gradient oracle", 10, gradient_oracle},
      {2, "manifold invariants", 0, manifold_invariants},
      {3, "exact recovery", 30, exact_recovery},
      {4, "tempering concentration", 60, tempering},
      {5, "sampling correctness at beta = 1", 120, sampling_correctness},
      {6, "Bingham sampler moments", 60, bingham_oracle},
      {7, "baseline ordering", 600, baseline_ordering},
      {8, "monotone degradation trends", 0, monotone_trends},
      {9, "solve determinism", 0, determinism},
      {10, "g2o round trip", 0, g2o_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.1f s", secs);
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      timing += fmt(" exceeds %.0f s", c.time_limit);
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  criterion %2d  %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
