#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace pps {

struct AdamParams {
  double eta = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-5;
};

struct SpsaParams {
  double delta = 0.005;  // displacement length
};

struct AdamState {
  std::vector<double> m, v;
  std::int64_t t = 0;
  void reset(std::size_t p) {
    m.assign(p, 0.0);
    v.assign(p, 0.0);
    t = 0;
  }
};

/// Uniform random direction: chi ~ U[-1,1]^p rescaled to length delta.
std::vector<double> sample_direction(std::mt19937_64& rng, std::size_t p, double delta);

/// Two-point simultaneous-perturbation gradient estimate,
///   G = [C(theta + d) - C(theta - d)] / (2 |d|) * d / |d|,
/// using exactly two cost evaluations.
std::vector<double> spsa_gradient(const std::function<double(std::span<const double>)>& cost,
                                  std::span<const double> theta, std::span<const double> d);

/// One ADAM step in place; bias correction uses step index state.t + 1.
void adam_update(std::vector<double>& theta, AdamState& state,
                 std::span<const double> grad, const AdamParams& p);

/// A schedule stage: iteration budget at one truncation threshold, with an
/// optional stage-local learning rate.
struct Stage {
  int iterations = 0;
  double delta_c = 0.0;
  std::optional<double> eta;
};

struct TraceRow {
  int iteration = 0;  // global, 1-based, after the update
  int stage = 0;
  double delta_c = 0.0;
  double energy = 0.0;
  std::size_t max_terms = 0;  // peak engine term count while evaluating
  double seconds = 0.0;       // wall time since (re)start; diagnostic only
};

struct TrainOptions {
  std::vector<Stage> stages;
  AdamParams adam;
  SpsaParams spsa;
  std::uint64_t seed = 1;
  int record_every = 10;        // 0: record only stage boundaries
  std::string checkpoint_path;  // empty: no checkpoints
  int checkpoint_every = 200;
};

struct TrainResult {
  std::vector<double> theta;
  std::vector<double> best_theta;
  double best_energy = 0.0;
  double final_energy = 0.0;  // at the last stage's delta_c
  int iterations_run = 0;
  bool aborted_non_finite = false;
  std::vector<TraceRow> trace;
};

/// Cost callback C(theta, delta_c); the peak-term statistic reported in trace
/// rows is whatever the callback exposes through `last_max_terms` (optional).
struct CostFn {
  std::function<double(std::span<const double>, double)> eval;
  std::function<std::size_t()> last_max_terms;  // may be null
};

/// SPSA + ADAM minimization through the stage schedule, starting from theta0
/// (resuming from `resume` when given). Tracks the best recorded iterate.
/// An exactly tied probe pair (zero gradient estimate, the generic situation
/// at the zero-parameter point of sign-flip-even costs) is replaced by an
/// exploration kick along the sampled direction, keeping the loop
/// deterministic while letting it leave such saddles.
TrainResult train(const CostFn& cost, std::vector<double> theta0, const TrainOptions& opts);

struct Checkpoint {
  std::vector<double> theta;
  AdamState adam;
  int stage = 0;
  int iteration = 0;  // global iterations completed
  double best_energy = 0.0;
  std::vector<double> best_theta;
};

void save_checkpoint(const Checkpoint& c, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// As train(), but resumes counters/moments from a checkpoint.
TrainResult train_resume(const CostFn& cost, const Checkpoint& from, const TrainOptions& opts);

}  // namespace pps
