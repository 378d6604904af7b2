#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pps/config.hpp"
#include "pps/engine.hpp"
#include "pps/lattice.hpp"
#include "pps/models.hpp"
#include "pps/optimizer.hpp"

namespace pps {

/// Everything a run needs, assembled from a RunConfig: the lattice, the full
/// Hamiltonian, the training cost (the translation proxy when enabled and
/// defined for the model), the ansatz circuit, and an exact reference energy
/// when one of the oracles applies.
struct Problem {
  Lattice lattice;
  SparseOperator hamiltonian;
  SparseOperator cost_op;
  Circuit ansatz;
  int param_count = 0;
  std::optional<double> exact_energy;
};

Problem build_problem(const RunConfig& cfg);

/// Cost adapter: C(theta, delta_c) = <cost_op>_{ansatz(theta)} with a fresh
/// engine per call. `prob` must outlive the returned functor.
CostFn make_cost(const Problem& prob, int shards);

struct TrainArtifacts {
  TrainResult result;
  double report_energy = 0.0;  // full Hamiltonian, best theta, report delta_c
  double seconds = 0.0;
  std::string out_dir;
};

/// Trains per config and writes config.cfg, trace.csv, checkpoint.json,
/// theta.json and report.json into out_dir (created if needed).
/// `resume` continues out_dir/checkpoint.json; `warm_theta` seeds a fresh run.
TrainArtifacts run_train(const RunConfig& cfg, const std::string& out_dir,
                         bool resume = false,
                         const std::optional<std::vector<double>>& warm_theta = {});

/// Full-Hamiltonian energy at the given truncation threshold.
double evaluate_energy(const RunConfig& cfg, std::span<const double> theta,
                       double delta_c, int shards);

std::vector<double> load_theta(const std::string& path);
void save_theta(std::span<const double> theta, const std::string& path);

}  // namespace pps
