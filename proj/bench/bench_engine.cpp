// Benchmark: serial reference kernels vs the sharded (OpenMP) kernels on the
// same Heisenberg walks. Prints a table of wall times and the speedup, and
// checks that both paths produce the identical surviving term set.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "pps/circuit.hpp"
#include "pps/engine.hpp"
#include "pps/lattice.hpp"
#include "pps/models.hpp"

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

struct Case {
  std::string name;
  pps::SparseOperator obs;
  pps::Circuit circ;
  std::vector<double> theta;
  double delta_c;
};

Case tfim_case(int n, int reps, double delta_c, unsigned seed) {
  auto lat = pps::chain_pbc(n);
  auto circ = pps::ising_ansatz(lat, reps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<double> theta(static_cast<std::size_t>(circ.param_count()));
  for (auto& t : theta) t = dist(rng);
  return {"tfim n=" + std::to_string(n) + " reps=" + std::to_string(reps),
          pps::ising_chain_hamiltonian(n, 1.5, 0.0), circ, theta, delta_c};
}

Case kitaev_case(int nx, int ny, int reps, double delta_c, unsigned seed) {
  auto lat = pps::honeycomb_square_pbc(nx, ny);
  auto circ = pps::kitaev_ansatz(lat, reps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);
  std::vector<double> theta(static_cast<std::size_t>(circ.param_count()));
  for (auto& t : theta) t = dist(rng);
  return {"kitaev " + std::to_string(nx) + "x" + std::to_string(ny) +
              " reps=" + std::to_string(reps),
          pps::kitaev_hamiltonian(lat, 1.0, 1.0, 1.0), circ, theta, delta_c};
}

void run_case(const Case& c, int shards, int repeats) {
  pps::Engine serial{{c.delta_c, 1, false}};
  pps::Engine sharded{{c.delta_c, shards, false}};

  // Warm-up evolutions double as the equivalence check.
  auto a = serial.evolve(c.obs, c.circ, c.theta);
  auto b = sharded.evolve(c.obs, c.circ, c.theta);
  const bool equal = (a == b);

  auto t0 = clock_t_::now();
  for (int r = 0; r < repeats; ++r) serial.evolve(c.obs, c.circ, c.theta);
  const double ts = seconds_since(t0) / repeats;

  t0 = clock_t_::now();
  for (int r = 0; r < repeats; ++r) sharded.evolve(c.obs, c.circ, c.theta);
  const double tp = seconds_since(t0) / repeats;

  std::printf("%-26s %10.2e %8zu %12.4f %12.4f %8.2fx   %s\n", c.name.c_str(),
              c.delta_c, a.size(), ts, tp, ts / tp,
              equal ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  int repeats = 3;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) threads = std::stoi(argv[++i]);
    if (arg == "--repeats" && i + 1 < argc) repeats = std::stoi(argv[++i]);
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  (void)threads;
  std::printf("OpenMP: disabled at build time\n");
#endif
  const int shards = pps::default_shard_count();
  std::printf("shards: %d, repeats per case: %d\n\n", shards, repeats);
  std::printf("%-26s %10s %8s %12s %12s %9s   %s\n", "case", "delta_c", "terms",
              "serial[s]", "sharded[s]", "speedup", "term sets");

  run_case(tfim_case(12, 6, 1e-4, 7), shards, repeats);
  run_case(tfim_case(20, 6, 1e-3, 7), shards, repeats);
  run_case(kitaev_case(4, 4, 2, 1e-4, 11), shards, repeats);
  run_case(kitaev_case(8, 6, 1, 1e-3, 11), shards, repeats);
  return 0;
}
