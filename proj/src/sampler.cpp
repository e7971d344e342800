#include "tgmc/sampler.hpp"

#include <chrono>
#include <cmath>

#include "tgmc/rng.hpp"

namespace tgmc {

namespace {

// Words reserved per (node, component, sweep) in the counter space; a
// 4-vector of normals consumes 8.
constexpr std::uint64_t kWordsPerSweep = 8;
constexpr std::uint64_t kMomentumInitKey = 0x6A09E667F3BCC908ULL;

CounterRng rotation_stream(const SamplerConfig& c, std::size_t node, std::uint64_t iteration) {
  return CounterRng(c.seed, 2 * node, iteration * kWordsPerSweep);
}

CounterRng translation_stream(const SamplerConfig& c, std::size_t node, std::uint64_t iteration) {
  return CounterRng(c.seed, 2 * node + 1, iteration * kWordsPerSweep);
}

void check_finite(double u, std::uint64_t iteration) {
  if (!std::isfinite(u)) {
    throw DivergenceError("potential became non-finite at iteration " + std::to_string(iteration) +
                          " (step size too large?)");
  }
}

double momentum_norm(const SamplerState& s) {
  double acc = 0.0;
  for (const Vec4& v : s.rot_momentum) acc += v.squaredNorm();
  for (const Vec3& v : s.trans_momentum) acc += v.squaredNorm();
  return std::sqrt(acc);
}

void ensure_initialized(SamplerState& s, const Estimate& init, const SamplerConfig& config) {
  if (s.estimate.size() == 0) s = SamplerState::FromEstimate(init, config);
}

// Per-node pieces shared by the public step functions and the sweep.
void b_rotation(SamplerState& s, std::size_t i, double decay) { s.rot_momentum[i] *= decay; }
void b_translation(SamplerState& s, std::size_t i, double decay) { s.trans_momentum[i] *= decay; }

void o_rotation(SamplerState& s, std::size_t i, const SamplerConfig& c, const Vec4& g) {
  Vec4 kick = -c.h * g;
  const double sd = c.noise_std();
  if (sd > 0.0) {
    CounterRng rng = rotation_stream(c, i, s.iteration);
    kick += sd * rng.normal4();
  }
  s.rot_momentum[i] += tangent_project(s.estimate.poses[i].rotation, kick);
}

void o_translation(SamplerState& s, std::size_t i, const SamplerConfig& c, const Vec3& g) {
  Vec3 kick = -c.h * g;
  const double sd = c.noise_std();
  if (sd > 0.0) {
    CounterRng rng = translation_stream(c, i, s.iteration);
    kick += sd * rng.normal3();
  }
  s.trans_momentum[i] += kick;
}

void a_rotation(SamplerState& s, std::size_t i, double h) {
  UnitQuaternion& q = s.estimate.poses[i].rotation;
  const GeodesicPoint next = geodesic_flow(q, s.rot_momentum[i], h);
  q = next.x;
  s.rot_momentum[i] = tangent_project(q, next.v);
}

void a_translation(SamplerState& s, std::size_t i, double h) {
  s.estimate.poses[i].translation += h * s.trans_momentum[i];
}

}  // namespace

double SamplerConfig::noise_std() const {
  if (std::isinf(beta)) return 0.0;
  switch (noise) {
    case NoiseScaling::kExactOu:
      return std::sqrt(-std::expm1(-2.0 * c * h) / beta);
    case NoiseScaling::kStepFree:
      return std::sqrt(2.0 * c / beta);
  }
  return 0.0;
}

void SamplerConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size h must be > 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("friction c must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
}

SamplerState SamplerState::FromEstimate(const Estimate& init, const SamplerConfig& config) {
  SamplerState s;
  s.estimate = init.pinned();
  const std::size_t n = init.size();
  s.rot_momentum.assign(n, Vec4::Zero());
  s.trans_momentum.assign(n, Vec3::Zero());
  if (config.random_initial_momenta && std::isfinite(config.beta)) {
    const double sd = 1.0 / std::sqrt(config.beta);
    for (std::size_t i = 1; i < n; ++i) {
      CounterRng rng(config.seed ^ kMomentumInitKey, i);
      s.rot_momentum[i] = tangent_project(s.estimate.poses[i].rotation, sd * rng.normal4());
      s.trans_momentum[i] = sd * rng.normal3();
    }
  }
  return s;
}

void step_B(SamplerState& s, const SamplerConfig& config) {
  const double decay = std::exp(-config.c * config.h);
  for (std::size_t i = 1; i < s.estimate.size(); ++i) {
    b_rotation(s, i, decay);
    b_translation(s, i, decay);
  }
}

void step_O(SamplerState& s, const SamplerConfig& config, const GradientVector& grad) {
  for (std::size_t i = 1; i < s.estimate.size(); ++i) {
    o_rotation(s, i, config, grad.rotation[i]);
    o_translation(s, i, config, grad.translation[i]);
  }
}

void step_A(SamplerState& s, const SamplerConfig& config) {
  for (std::size_t i = 1; i < s.estimate.size(); ++i) {
    a_rotation(s, i, config.h);
    a_translation(s, i, config.h);
  }
}

void sweep_with_gradient(SamplerState& s, const SamplerConfig& config, const GradientVector& grad) {
  const std::size_t n = s.estimate.size();
  const double decay = std::exp(-config.c * config.h);
  for (std::size_t i = 1; i < n; ++i) {
    b_rotation(s, i, decay);
    o_rotation(s, i, config, grad.rotation[i]);
    a_rotation(s, i, config.h);
  }
  for (std::size_t i = 1; i < n; ++i) {
    b_translation(s, i, decay);
    o_translation(s, i, config, grad.translation[i]);
    a_translation(s, i, config.h);
  }
  ++s.iteration;
}

void sweep(SamplerState& s, const PoseGraph& g, const ModelParams& p, const SamplerConfig& config) {
  sweep_with_gradient(s, config, grad_U(g, s.estimate, p));
}

double max_tangency_residual(const SamplerState& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.estimate.size(); ++i) {
    m = std::max(m, std::abs(s.estimate.poses[i].rotation.coeffs().dot(s.rot_momentum[i])));
  }
  return m;
}

double max_norm_residual(const SamplerState& s) {
  double m = 0.0;
  for (const Pose& p : s.estimate.poses) m = std::max(m, std::abs(p.rotation.coeffs().norm() - 1.0));
  return m;
}

std::pair<Estimate, RunReport> optimize(const PoseGraph& g, const ModelParams& p,
                                        const SamplerConfig& config, const Estimate& init,
                                        SamplerState* state) {
  config.validate();
  SamplerConfig cfg = config;
  cfg.beta = std::numeric_limits<double>::infinity();

  SamplerState local;
  SamplerState& s = state ? *state : local;
  ensure_initialized(s, init, cfg);

  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  PotentialEval eval = evaluate(g, s.estimate, p);
  check_finite(eval.value, s.iteration);
  report.initial_u = eval.value;
  report.best_u = eval.value;
  report.best_iteration = 0;
  Estimate best = s.estimate;
  report.u_trace.reserve(cfg.iterations);

  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    sweep_with_gradient(s, cfg, eval.grad);
    eval = evaluate(g, s.estimate, p);
    check_finite(eval.value, s.iteration);
    report.u_trace.push_back(eval.value);
    report.momentum_norm.push_back(momentum_norm(s));
    if (eval.value < report.best_u) {
      report.best_u = eval.value;
      report.best_iteration = k + 1;
      best = s.estimate;
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.final_estimate = best;
  return {best, report};
}

std::vector<Estimate> sample_posterior(const PoseGraph& g, const ModelParams& p,
                                       const SamplerConfig& config, const Estimate& init,
                                       const SampleSchedule& schedule, SamplerState* state,
                                       RunReport* report) {
  config.validate();
  if (!std::isfinite(config.beta)) {
    throw std::invalid_argument("sample_posterior requires a finite beta");
  }
  if (schedule.thin < 1) throw std::invalid_argument("thin must be >= 1");

  SamplerState local;
  SamplerState& s = state ? *state : local;
  ensure_initialized(s, init, config);

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t burn_in = schedule.burn_in.value_or(schedule.thin);
  const std::size_t total = burn_in + schedule.count * schedule.thin;
  std::vector<Estimate> samples;
  samples.reserve(schedule.count);
  RunReport local_report;
  RunReport& r = report ? *report : local_report;

  PotentialEval eval = evaluate(g, s.estimate, p);
  check_finite(eval.value, s.iteration);
  r.initial_u = eval.value;
  r.best_u = eval.value;
  r.best_iteration = 0;
  for (std::size_t k = 0; k < total; ++k) {
    sweep_with_gradient(s, config, eval.grad);
    eval = evaluate(g, s.estimate, p);
    check_finite(eval.value, s.iteration);
    r.u_trace.push_back(eval.value);
    r.momentum_norm.push_back(momentum_norm(s));
    if (eval.value < r.best_u) {
      r.best_u = eval.value;
      r.best_iteration = k + 1;
    }
    if (k + 1 > burn_in && (k + 1 - burn_in) % schedule.thin == 0) {
      samples.push_back(s.estimate.pinned());
    }
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.final_estimate = s.estimate;
  r.samples = samples;
  return samples;
}

}  // namespace tgmc
