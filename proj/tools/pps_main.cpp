// pps — command-line front end for the sparse Pauli-path toolchain.
//
// Subcommands map one-to-one onto the library: `train` drives the optimizer
// and writes a self-describing run directory; the remaining commands are thin
// adapters that read a config (and usually a theta vector) and emit
// machine-readable JSON on stdout.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pps/circuit.hpp"
#include "pps/config.hpp"
#include "pps/engine.hpp"
#include "pps/lattice.hpp"
#include "pps/measure.hpp"
#include "pps/models.hpp"
#include "pps/oracle.hpp"
#include "pps/qasm.hpp"
#include "pps/run.hpp"
#include "pps/topo.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

struct CommonOpts {
  std::string config_path;
  std::string theta_path;
  double delta_c = 0.0;
  int shards = 0;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_delta) {
  cmd->add_option("config", c.config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--theta", c.theta_path, "parameter vector (JSON); zeros when omitted")
      ->check(CLI::ExistingFile);
  if (with_delta)
    cmd->add_option("--delta-c", c.delta_c, "truncation threshold (default 0: exact)")
        ->check(CLI::NonNegativeNumber);
  cmd->add_option("--shards", c.shards, "shard count override (0 = auto)");
  cmd->add_option("--threads", c.threads, "OpenMP thread count (0 = runtime default)");
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::vector<double> theta_or_zeros(const std::string& path, int param_count) {
  if (path.empty()) return std::vector<double>(param_count, 0.0);
  auto theta = pps::load_theta(path);
  if (static_cast<int>(theta.size()) != param_count)
    throw std::runtime_error(path + ": expected " + std::to_string(param_count) +
                             " parameters, got " + std::to_string(theta.size()));
  return theta;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string bond_type_name(pps::BondType t) {
  switch (t) {
    case pps::BondType::X: return "X";
    case pps::BondType::Y: return "Y";
    case pps::BondType::Z: return "Z";
    default: return "ZZ";
  }
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
  std::string config_path;
  std::string out_dir;
  std::string warm_path;
  bool resume = false;
  int shards = 0;
  int threads = 0;
};

int cmd_train(const TrainOpts& o) {
  apply_threads(o.threads);
  pps::RunConfig cfg = pps::load_config(o.config_path);
  if (o.shards > 0) cfg.shards = o.shards;

  std::optional<std::vector<double>> warm;
  if (!o.warm_path.empty()) warm = pps::load_theta(o.warm_path);

  auto art = pps::run_train(cfg, o.out_dir, o.resume, warm);

  json versions = {{"tool", kVersion},
                   {"compiler", __VERSION__},
#ifdef _OPENMP
                   {"openmp", _OPENMP}};
#else
                   {"openmp", 0}};
#endif
  std::ofstream(std::filesystem::path(o.out_dir) / "versions.json") << versions.dump(2) << "\n";

  json out = {{"out_dir", art.out_dir},
              {"iterations", art.result.iterations_run},
              {"cost_energy_best", art.result.best_energy},
              {"report_energy", art.report_energy},
              {"report_delta_c", cfg.report_delta_c},
              {"seconds", art.seconds},
              {"aborted_non_finite", art.result.aborted_non_finite}};
  emit(out);
  return art.result.aborted_non_finite ? 1 : 0;
}

// ---------------------------------------------------------------------------
// evaluate

int cmd_evaluate(const CommonOpts& o) {
  apply_threads(o.threads);
  pps::RunConfig cfg = pps::load_config(o.config_path);
  if (o.shards > 0) cfg.shards = o.shards;
  auto prob = pps::build_problem(cfg);
  auto theta = theta_or_zeros(o.theta_path, prob.param_count);

  double e = pps::evaluate_energy(cfg, theta, o.delta_c, cfg.shards);
  json out = {{"energy", e}, {"delta_c", o.delta_c}, {"n_qubits", prob.hamiltonian.n_qubits()}};
  if (prob.exact_energy) {
    out["exact_energy"] = *prob.exact_energy;
    out["rel_error"] = std::abs(e - *prob.exact_energy) / std::abs(*prob.exact_energy);
  }
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// observables

int cmd_observables(const CommonOpts& o) {
  apply_threads(o.threads);
  pps::RunConfig cfg = pps::load_config(o.config_path);
  if (o.shards > 0) cfg.shards = o.shards;
  auto prob = pps::build_problem(cfg);
  auto theta = theta_or_zeros(o.theta_path, prob.param_count);

  pps::Engine eng{{o.delta_c, cfg.shards, false}};
  double mz = pps::magnetization_z(eng, prob.ansatz, theta);
  auto bond_vals = pps::bond_expectations(eng, prob.lattice, prob.ansatz, theta);

  json bonds = json::array();
  for (std::size_t i = 0; i < prob.lattice.bonds.size(); ++i) {
    const auto& b = prob.lattice.bonds[i];
    bonds.push_back({{"u", b.u}, {"v", b.v}, {"type", bond_type_name(b.type)},
                     {"value", bond_vals[i]}});
  }
  emit({{"magnetization_z", mz}, {"bonds", bonds}, {"delta_c", o.delta_c}});
  return 0;
}

// ---------------------------------------------------------------------------
// tomography

int cmd_tomography(const CommonOpts& o, const std::vector<int>& region, bool tee) {
  apply_threads(o.threads);
  pps::RunConfig cfg = pps::load_config(o.config_path);
  if (o.shards > 0) cfg.shards = o.shards;
  auto prob = pps::build_problem(cfg);
  auto theta = theta_or_zeros(o.theta_path, prob.param_count);
  pps::Engine eng{{o.delta_c, cfg.shards, false}};

  if (tee) {
    auto rep = pps::topological_entropy(eng, prob.lattice, prob.ansatz, theta);
    emit({{"s_a", rep.s_a}, {"s_b", rep.s_b}, {"s_c", rep.s_c},
          {"s_ab", rep.s_ab}, {"s_ac", rep.s_ac}, {"s_bc", rep.s_bc},
          {"s_abc", rep.s_abc}, {"s_topo", rep.s_topo}});
    return 0;
  }

  if (region.empty()) throw CLI::ValidationError("tomography", "--region is required");
  auto rho = pps::tomography(eng, prob.ansatz, theta, region);
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      rr.push_back(rho(r, c).real());
      ri.push_back(rho(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  emit({{"region", region}, {"rho_real", re}, {"rho_imag", im},
        {"entropy", pps::von_neumann_entropy(rho)}});
  return 0;
}

// ---------------------------------------------------------------------------
// braid

int cmd_braid(const CommonOpts& o, const std::string& kind, bool ancilla) {
  apply_threads(o.threads);
  pps::RunConfig cfg = pps::load_config(o.config_path);
  if (o.shards > 0) cfg.shards = o.shards;
  auto prob = pps::build_problem(cfg);
  if (prob.lattice.kind != pps::LatticeKind::HoneycombSquarePBC)
    throw std::runtime_error("braid requires a kitaev model config");
  auto theta = theta_or_zeros(o.theta_path, prob.param_count);
  pps::Engine eng{{o.delta_c, cfg.shards, false}};

  std::vector<std::string> kinds =
      kind == "all" ? std::vector<std::string>{"em", "epsi", "mpsi"}
                    : std::vector<std::string>{kind};
  json rows = json::array();
  for (const auto& k : kinds) {
    auto spec = pps::make_braid_spec(k, prob.lattice);
    std::complex<double> phase;
    if (ancilla) {
      auto re_c = pps::controlled_braid_circuit(spec, prob.ansatz, theta, pps::AncillaBasis::X);
      auto im_c = pps::controlled_braid_circuit(spec, prob.ansatz, theta, pps::AncillaBasis::Y);
      pps::SparseOperator z_anc(re_c.n_qubits());
      pps::PauliString z(re_c.n_qubits());
      z.set_letter(re_c.n_qubits() - 1, 'Z');
      z_anc.add_term(z, 1.0);
      phase = {eng.expectation(z_anc, re_c), eng.expectation(z_anc, im_c)};
    } else {
      phase = pps::braiding_phase(spec, prob.ansatz, theta, eng);
    }
    rows.push_back({{"kind", k}, {"re", phase.real()}, {"im", phase.imag()},
                    {"method", ancilla ? "ancilla" : "reduction"}});
  }
  emit({{"phases", rows}});
  return 0;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const std::vector<std::string>& args) {
  if (args.empty())
    throw CLI::ValidationError("oracle", "expected: kitaev nx ny jx jy jz | tfim n gx | dense <config>");
  const std::string& kind = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1)
      throw CLI::ValidationError("oracle", kind + ": expected " + std::to_string(n) + " arguments");
  };
  if (kind == "kitaev") {
    need(5);
    int nx = std::stoi(args[1]), ny = std::stoi(args[2]);
    double jx = std::stod(args[3]), jy = std::stod(args[4]), jz = std::stod(args[5]);
    double e = pps::oracle::exact_kitaev_energy(nx, ny, jx, jy, jz);
    emit({{"model", "kitaev"}, {"nx", nx}, {"ny", ny},
          {"jx", jx}, {"jy", jy}, {"jz", jz}, {"energy", e}});
    return 0;
  }
  if (kind == "tfim") {
    need(2);
    int n = std::stoi(args[1]);
    double gx = std::stod(args[2]);
    emit({{"model", "tfim"}, {"n", n}, {"gx", gx},
          {"energy", pps::oracle::exact_tfim_energy(n, gx)}});
    return 0;
  }
  if (kind == "dense") {
    need(1);
    pps::RunConfig cfg = pps::load_config(args[1]);
    auto prob = pps::build_problem(cfg);
    if (prob.hamiltonian.n_qubits() > 16)
      throw std::runtime_error("dense oracle capped at 16 qubits");
    emit({{"model", cfg.model.kind},
          {"energy", pps::oracle::exact_ground_energy_small(prob.hamiltonian)}});
    return 0;
  }
  throw CLI::ValidationError("oracle", "unknown oracle kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// export-qasm

int cmd_export_qasm(const CommonOpts& o, const std::string& out_path) {
  pps::RunConfig cfg = pps::load_config(o.config_path);
  auto prob = pps::build_problem(cfg);
  const auto theta = theta_or_zeros(o.theta_path, prob.param_count);
  const std::string text = pps::to_qasm(prob.ansatz, theta);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error(out_path + ": cannot open for writing");
    f << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  std::string config_path;
  std::string out_dir;
  std::string param = "gx";
  std::vector<double> values;
  bool cold = false;
  int shards = 0;
  int threads = 0;
};

int cmd_sweep(const SweepOpts& o) {
  apply_threads(o.threads);
  pps::RunConfig base = pps::load_config(o.config_path);
  if (o.shards > 0) base.shards = o.shards;
  if (o.values.empty()) throw CLI::ValidationError("sweep", "--values is required");

  auto set_param = [&](pps::RunConfig& cfg, double v) {
    if (o.param == "gx") cfg.model.gx = v;
    else if (o.param == "gz") cfg.model.gz = v;
    else if (o.param == "jx") cfg.model.jx = v;
    else if (o.param == "jy") cfg.model.jy = v;
    else if (o.param == "jz") cfg.model.jz = v;
    else throw CLI::ValidationError("sweep", "unknown coupling '" + o.param + "'");
  };

  std::filesystem::create_directories(o.out_dir);
  std::ofstream csv(std::filesystem::path(o.out_dir) / "sweep.csv");
  csv << "coupling,energy,rel_error,seconds,status,run_dir\n";
  csv.precision(17);

  std::optional<std::vector<double>> warm;
  json rows = json::array();
  for (std::size_t i = 0; i < o.values.size(); ++i) {
    pps::RunConfig cfg = base;
    set_param(cfg, o.values[i]);
    std::string dir = (std::filesystem::path(o.out_dir) /
                       (o.param + "_" + std::to_string(o.values[i]))).string();
    json row = {{"coupling", o.values[i]}, {"run_dir", dir}};
    try {
      auto art = pps::run_train(cfg, dir, false, o.cold ? std::nullopt : warm);
      auto prob = pps::build_problem(cfg);
      double rel = std::numeric_limits<double>::quiet_NaN();
      if (prob.exact_energy)
        rel = std::abs(art.report_energy - *prob.exact_energy) / std::abs(*prob.exact_energy);
      csv << o.values[i] << "," << art.report_energy << "," << rel << ","
          << art.seconds << ",ok," << dir << "\n";
      row["energy"] = art.report_energy;
      row["seconds"] = art.seconds;
      if (prob.exact_energy) row["rel_error"] = rel;
      row["status"] = "ok";
      warm = pps::load_theta((std::filesystem::path(dir) / "theta.json").string());
    } catch (const std::exception& e) {
      csv << o.values[i] << ",nan,nan,0,failed," << dir << "\n";
      row["status"] = std::string("failed: ") + e.what();
    }
    csv.flush();
    rows.push_back(row);
  }
  emit({{"param", o.param}, {"points", rows},
        {"csv", (std::filesystem::path(o.out_dir) / "sweep.csv").string()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse Pauli-path simulator and variational toolchain"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  TrainOpts t;
  auto* train = app.add_subcommand("train", "optimize an ansatz and write a run directory");
  train->add_option("config", t.config_path, "run configuration file")
      ->required()->check(CLI::ExistingFile);
  train->add_option("--out", t.out_dir, "run directory")->required();
  train->add_flag("--resume", t.resume, "continue from <out>/checkpoint.json");
  train->add_option("--warm", t.warm_path, "initial theta (JSON) for a fresh run")
      ->check(CLI::ExistingFile);
  train->add_option("--shards", t.shards, "shard count override (0 = auto)");
  train->add_option("--threads", t.threads, "OpenMP thread count (0 = runtime default)");

  CommonOpts ev;
  auto* evaluate = app.add_subcommand("evaluate", "full-Hamiltonian energy at theta");
  add_common(evaluate, ev, true);

  CommonOpts ob;
  auto* observables = app.add_subcommand("observables", "magnetization and bond expectations");
  add_common(observables, ob, true);

  CommonOpts tm;
  std::vector<int> region;
  bool tee = false;
  auto* tomography = app.add_subcommand("tomography", "reduced density matrix of a site region");
  add_common(tomography, tm, true);
  tomography->add_option("--region", region, "sites to keep (at most 8)")->delimiter(',');
  tomography->add_flag("--tee", tee, "topological entanglement entropy report instead");

  CommonOpts br;
  std::string braid_kind = "all";
  bool ancilla = false;
  auto* braid = app.add_subcommand("braid", "anyon interferometry phases");
  add_common(braid, br, true);
  braid->add_option("--kind", braid_kind, "em | epsi | mpsi | all")
      ->check(CLI::IsMember({"em", "epsi", "mpsi", "all"}));
  braid->add_flag("--ancilla", ancilla, "Hadamard-test circuit instead of operator reduction");

  std::vector<std::string> oracle_args;
  auto* oracle = app.add_subcommand("oracle", "exact reference energies");
  oracle->add_option("args", oracle_args, "kitaev nx ny jx jy jz | tfim n gx | dense <config>");

  CommonOpts xq;
  std::string qasm_out;
  auto* export_qasm = app.add_subcommand("export-qasm",
                                         "emit the ansatz as OpenQASM 2.0 (theta or zeros)");
  add_common(export_qasm, xq, false);
  export_qasm->add_option("--out", qasm_out, "output file (default stdout)");

  SweepOpts sw;
  auto* sweep = app.add_subcommand("sweep", "coupling sweep with warm-start chaining");
  sweep->add_option("config", sw.config_path, "base configuration file")
      ->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sw.out_dir, "sweep directory")->required();
  sweep->add_option("--param", sw.param, "coupling to sweep: gx | gz | jx | jy | jz");
  sweep->add_option("--values", sw.values, "grid values in sweep order")->delimiter(',');
  sweep->add_flag("--cold", sw.cold, "disable warm-start chaining");
  sweep->add_option("--shards", sw.shards, "shard count override (0 = auto)");
  sweep->add_option("--threads", sw.threads, "OpenMP thread count (0 = runtime default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(t);
    if (*evaluate) return cmd_evaluate(ev);
    if (*observables) return cmd_observables(ob);
    if (*tomography) return cmd_tomography(tm, region, tee);
    if (*braid) return cmd_braid(br, braid_kind, ancilla);
    if (*oracle) return cmd_oracle(oracle_args);
    if (*export_qasm) return cmd_export_qasm(xq, qasm_out);
    if (*sweep) return cmd_sweep(sw);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
