#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgmc/pose_graph.hpp"
#include "tgmc/potential.hpp"

namespace tgmc {

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the O step scales the injected Gaussian noise.
enum class NoiseScaling {
  // sqrt((1 - exp(-2 c h)) / beta): together with step B this is the exact
  // Ornstein-Uhlenbeck update of the momentum, so the kinetic temperature is
  // 1 / beta for every c h. Equals sqrt(2 c h / beta) to first order.
  kExactOu,
  // sqrt(2 c / beta), independent of h. Targets roughly exp(-beta h U).
  kStepFree,
};

struct SamplerConfig {
  static constexpr const char* kOrder = "BOA";

  double h = 0.004;
  double c = 1000.0;
  double beta = std::numeric_limits<double>::infinity();
  std::size_t iterations = 500;
  std::uint64_t seed = 0;
  NoiseScaling noise = NoiseScaling::kExactOu;
  // Draw initial momenta from the tangent Gaussian instead of zeros.
  bool random_initial_momenta = false;

  bool deterministic() const { return std::isinf(beta); }
  // Standard deviation of the per-coordinate noise injected by step O.
  double noise_std() const;
  void validate() const;
};

// Latent vector plus momenta. The RNG state is (config.seed, iteration):
// draws for sweep k come from counter-addressed streams.
struct SamplerState {
  Estimate estimate;
  std::vector<Vec4> rot_momentum;
  std::vector<Vec3> trans_momentum;
  std::uint64_t iteration = 0;

  static SamplerState FromEstimate(const Estimate& init, const SamplerConfig& config);
};

struct RunReport {
  std::vector<double> u_trace;         // U after each sweep
  std::vector<double> momentum_norm;   // |v| over all nodes after each sweep
  double initial_u = 0.0;
  double best_u = 0.0;
  std::size_t best_iteration = 0;      // 0 = initial state
  double wall_seconds = 0.0;
  Estimate final_estimate;             // best iterate for optimize()
  std::vector<Estimate> samples;
  std::string rng = "splitmix64-counter";
};

// Split steps. Node 0 is never moved.
void step_B(SamplerState& s, const SamplerConfig& config);
void step_O(SamplerState& s, const SamplerConfig& config, const GradientVector& grad);
void step_A(SamplerState& s, const SamplerConfig& config);

// One iteration of the scheme: gradient at the current state, then B, O, A
// on every rotation pair, then B, O, A on every translation pair.
void sweep(SamplerState& s, const PoseGraph& g, const ModelParams& p, const SamplerConfig& config);
void sweep_with_gradient(SamplerState& s, const SamplerConfig& config, const GradientVector& grad);

// Tangency residual max_i |q_i . v_i| and norm residual max_i ||q_i| - 1|.
double max_tangency_residual(const SamplerState& s);
double max_norm_residual(const SamplerState& s);

// Runs config.iterations sweeps with noise disabled and returns the best
// iterate seen. The state is advanced in place when `state` is given.
std::pair<Estimate, RunReport> optimize(const PoseGraph& g, const ModelParams& p,
                                        const SamplerConfig& config, const Estimate& init,
                                        SamplerState* state = nullptr);

struct SampleSchedule {
  std::size_t count = 40;
  std::size_t thin = 10;
  std::optional<std::size_t> burn_in;  // defaults to thin
};

// Runs burn-in, then keeps one gauge-pinned estimate every `thin` sweeps.
// Requires a finite beta.
std::vector<Estimate> sample_posterior(const PoseGraph& g, const ModelParams& p,
                                       const SamplerConfig& config, const Estimate& init,
                                       const SampleSchedule& schedule,
                                       SamplerState* state = nullptr,
                                       RunReport* report = nullptr);

}  // namespace tgmc
