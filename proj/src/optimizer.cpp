#include "pps/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace pps {

namespace {

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

std::vector<double> sample_direction(std::mt19937_64& rng, std::size_t p, double delta) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> d(p);
  double norm = 0.0;
  do {
    for (auto& x : d) x = u(rng);
    norm = l2_norm(d);
  } while (norm == 0.0);
  for (auto& x : d) x *= delta / norm;
  return d;
}

std::vector<double> spsa_gradient(const std::function<double(std::span<const double>)>& cost,
                                  std::span<const double> theta, std::span<const double> d) {
  if (theta.size() != d.size()) throw std::invalid_argument("spsa_gradient: size mismatch");
  std::vector<double> plus(theta.begin(), theta.end());
  std::vector<double> minus(theta.begin(), theta.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    plus[i] += d[i];
    minus[i] -= d[i];
  }
  const double cp = cost(plus);
  const double cm = cost(minus);
  const double nd = l2_norm(d);
  const double scale = (cp - cm) / (2.0 * nd * nd);
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g[i] = scale * d[i];
  return g;
}

void adam_update(std::vector<double>& theta, AdamState& state,
                 std::span<const double> grad, const AdamParams& p) {
  const std::size_t n = theta.size();
  if (grad.size() != n || state.m.size() != n || state.v.size() != n)
    throw std::invalid_argument("adam_update: size mismatch");
  state.t += 1;
  const double bc1 = 1.0 - std::pow(p.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(p.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < n; ++i) {
    state.m[i] = p.beta1 * state.m[i] + (1.0 - p.beta1) * grad[i];
    state.v[i] = p.beta2 * state.v[i] + (1.0 - p.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    theta[i] -= p.eta * mhat / (std::sqrt(vhat) + p.eps);
  }
}

namespace {

TrainResult train_impl(const CostFn& cost, Checkpoint st, const TrainOptions& opts) {
  if (!cost.eval) throw std::invalid_argument("train: missing cost function");
  if (opts.stages.empty()) throw std::invalid_argument("train: empty schedule");
  const std::size_t p = st.theta.size();
  if (p == 0) throw std::invalid_argument("train: empty parameter vector");
  if (st.adam.m.size() != p) st.adam.reset(p);

  // The RNG is re-seeded and fast-forwarded so that a resumed run replays the
  // same direction stream as an uninterrupted one.
  std::mt19937_64 rng(opts.seed);
  rng.discard(static_cast<unsigned long long>(st.iteration) * p);

  TrainResult res;
  res.best_energy = st.iteration > 0 ? st.best_energy
                                     : std::numeric_limits<double>::infinity();
  res.best_theta = st.best_theta;

  int global = st.iteration;
  int total_budget = 0;
  for (const Stage& s : opts.stages) total_budget += s.iterations;

  // Locate the stage the checkpoint left off in.
  std::size_t s0 = 0;
  int done_before = 0;
  while (s0 < opts.stages.size() && done_before + opts.stages[s0].iterations <= global)
    done_before += opts.stages[s0++].iterations;

  auto record_row = [&](int stage_idx, double delta_c) -> bool {
    const double e = cost.eval(st.theta, delta_c);
    if (!std::isfinite(e)) return false;
    TraceRow row{global, stage_idx, delta_c, e,
                 cost.last_max_terms ? cost.last_max_terms() : 0};
    res.trace.push_back(row);
    if (e < res.best_energy) {
      res.best_energy = e;
      res.best_theta = st.theta;
    }
    return true;
  };

  auto checkpoint_now = [&](std::size_t stage_idx) {
    if (opts.checkpoint_path.empty()) return;
    Checkpoint c;
    c.theta = st.theta;
    c.adam = st.adam;
    c.stage = static_cast<int>(stage_idx);
    c.iteration = global;
    c.best_energy = res.best_energy;
    c.best_theta = res.best_theta;
    save_checkpoint(c, opts.checkpoint_path);
  };

  bool aborted = false;
  for (std::size_t s = s0; s < opts.stages.size() && !aborted; ++s) {
    const Stage& stage = opts.stages[s];
    AdamParams ap = opts.adam;
    if (stage.eta) ap.eta = *stage.eta;
    auto stage_cost = [&](std::span<const double> th) { return cost.eval(th, stage.delta_c); };

    const int start_it = (s == s0) ? global - done_before : 0;
    for (int it = start_it; it < stage.iterations; ++it) {
      const auto d = sample_direction(rng, p, opts.spsa.delta);
      auto g = spsa_gradient(stage_cost, st.theta, d);
      if (!all_finite(g)) {
        aborted = true;
        break;
      }
      // An exactly tied probe pair carries no gradient information. This
      // happens systematically at the zero-parameter point of ansatz families
      // whose cost is even under a global sign flip (real initial state, real
      // observable, rotation axes with an even Y count): there C(+d) and
      // C(-d) agree bit for bit and the two-point estimate vanishes, freezing
      // the update rule at the saddle forever. Fall back to an exploration
      // kick along the sampled direction — deterministic, still two cost
      // evaluations, and a no-op anywhere the probe sees actual slope.
      if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; }))
        g = d;
      adam_update(st.theta, st.adam, g, ap);
      ++global;
      const bool last_of_stage = (it == stage.iterations - 1);
      if ((opts.record_every > 0 && global % opts.record_every == 0) || last_of_stage) {
        if (!record_row(static_cast<int>(s), stage.delta_c)) {
          aborted = true;
          break;
        }
      }
      if (opts.checkpoint_every > 0 && global % opts.checkpoint_every == 0)
        checkpoint_now(s);
    }
    done_before += stage.iterations;
  }

  res.theta = st.theta;
  res.iterations_run = global;
  res.aborted_non_finite = aborted;
  const double report_delta = opts.stages.back().delta_c;
  res.final_energy = cost.eval(res.theta, report_delta);
  if (std::isfinite(res.final_energy) && res.final_energy < res.best_energy) {
    res.best_energy = res.final_energy;
    res.best_theta = res.theta;
  }
  if (res.best_theta.empty()) {
    res.best_theta = res.theta;
    res.best_energy = res.final_energy;
  }
  checkpoint_now(opts.stages.size() - 1);
  return res;
}

}  // namespace

TrainResult train(const CostFn& cost, std::vector<double> theta0, const TrainOptions& opts) {
  Checkpoint st;
  st.theta = std::move(theta0);
  return train_impl(cost, std::move(st), opts);
}

TrainResult train_resume(const CostFn& cost, const Checkpoint& from, const TrainOptions& opts) {
  return train_impl(cost, from, opts);
}

void save_checkpoint(const Checkpoint& c, const std::string& path) {
  nlohmann::json j;
  j["theta"] = c.theta;
  j["adam_m"] = c.adam.m;
  j["adam_v"] = c.adam.v;
  j["adam_t"] = c.adam.t;
  j["stage"] = c.stage;
  j["iteration"] = c.iteration;
  j["best_energy"] = c.best_energy;
  j["best_theta"] = c.best_theta;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << j.dump(2) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  nlohmann::json j;
  in >> j;
  Checkpoint c;
  c.theta = j.at("theta").get<std::vector<double>>();
  c.adam.m = j.at("adam_m").get<std::vector<double>>();
  c.adam.v = j.at("adam_v").get<std::vector<double>>();
  c.adam.t = j.at("adam_t").get<std::int64_t>();
  c.stage = j.at("stage").get<int>();
  c.iteration = j.at("iteration").get<int>();
  c.best_energy = j.at("best_energy").get<double>();
  c.best_theta = j.at("best_theta").get<std::vector<double>>();
  return c;
}

}  // namespace pps
