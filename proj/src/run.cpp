#include "pps/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "pps/oracle.hpp"

namespace pps {

Problem build_problem(const RunConfig& cfg) {
  const ModelConfig& m = cfg.model;
  Problem prob;
  if (m.kind == "tfim_chain") {
    if (m.n < 3) throw std::runtime_error("tfim_chain: [model] n >= 3 required");
    prob.lattice = chain_pbc(m.n);
    prob.hamiltonian = ising_chain_hamiltonian(m.n, m.gx, m.gz);
    prob.cost_op = cfg.ansatz.proxy ? ising_chain_proxy(m.n, m.gx, m.gz) : prob.hamiltonian;
    prob.ansatz = ising_ansatz(prob.lattice, cfg.ansatz.reps);
    if (m.gz == 0.0 && m.n % 2 == 0)
      prob.exact_energy = oracle::exact_tfim_energy(m.n, m.gx);
    else if (m.n <= 16)
      prob.exact_energy = oracle::exact_ground_energy_small(prob.hamiltonian);
  } else if (m.kind == "ising_square") {
    if (m.nx < 3 || m.ny < 3) throw std::runtime_error("ising_square: nx, ny >= 3 required");
    prob.lattice = square_pbc(m.nx, m.ny);
    prob.hamiltonian = ising_hamiltonian(prob.lattice, m.gx, m.gz);
    prob.cost_op = (cfg.ansatz.proxy && m.gz == 0.0)
                       ? ising_square_proxy(m.nx, m.ny, m.gx)
                       : prob.hamiltonian;
    prob.ansatz = ising_ansatz(prob.lattice, cfg.ansatz.reps);
    if (prob.lattice.n_sites <= 16)
      prob.exact_energy = oracle::exact_ground_energy_small(prob.hamiltonian);
  } else if (m.kind == "ising_heavyhex") {
    if (m.lattice_file.empty())
      throw std::runtime_error("ising_heavyhex: [model] lattice_file required");
    prob.lattice = heavy_hex_127(m.lattice_file);
    prob.hamiltonian = ising_hamiltonian(prob.lattice, m.gx, m.gz);
    prob.cost_op = prob.hamiltonian;  // no translation proxy on this graph
    prob.ansatz = ising_ansatz(prob.lattice, cfg.ansatz.reps);
  } else if (m.kind == "kitaev") {
    if (m.nx < 4 || m.ny < 4) throw std::runtime_error("kitaev: nx, ny >= 4 required");
    prob.lattice = honeycomb_square_pbc(m.nx, m.ny);
    prob.hamiltonian = kitaev_hamiltonian(prob.lattice, m.jx, m.jy, m.jz);
    prob.cost_op = cfg.ansatz.proxy ? kitaev_proxy(m.nx, m.ny, m.jx, m.jy, m.jz)
                                    : prob.hamiltonian;
    prob.ansatz = kitaev_ansatz(prob.lattice, cfg.ansatz.reps);
    prob.exact_energy = oracle::exact_kitaev_energy(prob.lattice, m.jx, m.jy, m.jz);
  } else {
    throw std::runtime_error("unknown [model] kind '" + m.kind + "'");
  }
  prob.param_count = prob.ansatz.param_count();
  return prob;
}

CostFn make_cost(const Problem& prob, int shards) {
  auto peak = std::make_shared<std::size_t>(0);
  CostFn f;
  f.eval = [&prob, shards, peak](std::span<const double> th, double dc) {
    Engine eng(EngineOptions{dc, shards, false});
    const double e = eng.expectation(prob.cost_op, prob.ansatz, th);
    *peak = eng.stats().max_terms;
    return e;
  };
  f.last_max_terms = [peak] { return *peak; };
  return f;
}

namespace {

void write_trace_csv(const std::vector<TraceRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "iteration,stage,delta_c,energy,max_terms\n";
  out.precision(17);
  for (const TraceRow& r : rows)
    out << r.iteration << "," << r.stage << "," << r.delta_c << "," << r.energy
        << "," << r.max_terms << "\n";
}

}  // namespace

TrainArtifacts run_train(const RunConfig& cfg, const std::string& out_dir, bool resume,
                         const std::optional<std::vector<double>>& warm_theta) {
  if (cfg.stages.empty()) throw std::runtime_error("run_train: [schedule] has no stages");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const Problem prob = build_problem(cfg);
  const CostFn cost = make_cost(prob, cfg.shards);

  TrainOptions topts;
  topts.stages = cfg.stages;
  topts.adam = cfg.adam;
  topts.spsa = cfg.spsa;
  topts.seed = cfg.seed;
  topts.record_every = cfg.record_every;
  topts.checkpoint_every = cfg.checkpoint_every;
  topts.checkpoint_path = (fs::path(out_dir) / "checkpoint.json").string();

  const auto t0 = std::chrono::steady_clock::now();
  TrainResult result;
  if (resume) {
    result = train_resume(cost, load_checkpoint(topts.checkpoint_path), topts);
  } else {
    std::vector<double> theta0(prob.param_count, 0.0);
    if (warm_theta) {
      if (warm_theta->size() != static_cast<std::size_t>(prob.param_count))
        throw std::runtime_error("run_train: warm-start theta has wrong length");
      theta0 = *warm_theta;
    }
    result = train(cost, std::move(theta0), topts);
  }
  const auto t1 = std::chrono::steady_clock::now();

  TrainArtifacts art;
  art.result = std::move(result);
  art.seconds = std::chrono::duration<double>(t1 - t0).count();
  art.out_dir = out_dir;

  // Report: the best iterate re-scored on the full Hamiltonian.
  Engine eng(EngineOptions{cfg.report_delta_c, cfg.shards, false});
  art.report_energy = eng.expectation(prob.hamiltonian, prob.ansatz, art.result.best_theta);

  save_config(cfg, (fs::path(out_dir) / "config.cfg").string());
  write_trace_csv(art.result.trace, (fs::path(out_dir) / "trace.csv").string());
  save_theta(art.result.best_theta, (fs::path(out_dir) / "theta.json").string());

  nlohmann::json rep;
  rep["cost_energy_best"] = art.result.best_energy;
  rep["report_energy"] = art.report_energy;
  rep["report_delta_c"] = cfg.report_delta_c;
  rep["iterations"] = art.result.iterations_run;
  rep["aborted_non_finite"] = art.result.aborted_non_finite;
  rep["seconds"] = art.seconds;
  std::size_t peak = 0;
  for (const TraceRow& r : art.result.trace) peak = std::max(peak, r.max_terms);
  rep["max_terms_peak"] = peak;
  if (prob.exact_energy) {
    rep["exact_energy"] = *prob.exact_energy;
    rep["rel_error"] =
        std::abs(art.report_energy - *prob.exact_energy) / std::abs(*prob.exact_energy);
  }
  std::ofstream rout(fs::path(out_dir) / "report.json");
  rout << rep.dump(2) << "\n";
  return art;
}

double evaluate_energy(const RunConfig& cfg, std::span<const double> theta,
                       double delta_c, int shards) {
  const Problem prob = build_problem(cfg);
  Engine eng(EngineOptions{delta_c, shards, false});
  return eng.expectation(prob.hamiltonian, prob.ansatz, theta);
}

std::vector<double> load_theta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_theta: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j.at("theta").get<std::vector<double>>();
}

void save_theta(std::span<const double> theta, const std::string& path) {
  nlohmann::json j;
  j["theta"] = std::vector<double>(theta.begin(), theta.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_theta: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pps
