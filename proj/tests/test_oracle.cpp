#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dense_ref.hpp"
#include "pps/lattice.hpp"
#include "pps/models.hpp"
#include "pps/oracle.hpp"
#include "test_util.hpp"

using namespace pps;

namespace {

/// Independent momentum-space evaluation of the honeycomb free-fermion
/// sector energy: E = -sum_k |Jz + Jx e^{i(p1-p2)} + Jy e^{-i p2}| over the
/// (nx/2) x ny momentum grid, boundary sectors entering as half-integer
/// grid offsets (d1, d2).
double kspace_energy(int nx, int ny, double jx, double jy, double jz,
                     double d1, double d2) {
  const std::complex<double> i_unit(0.0, 1.0);
  double e = 0.0;
  for (int m = 0; m < nx / 2; ++m) {
    const double p1 = 2.0 * M_PI * (m + d1) / (nx / 2);
    for (int l = 0; l < ny; ++l) {
      const double p2 = (2.0 * M_PI * (l + d2) + (ny / 2) * p1) / ny;
      const std::complex<double> f =
          jz + jx * std::exp(i_unit * (p1 - p2)) + jy * std::exp(-i_unit * p2);
      e -= std::abs(f);
    }
  }
  return e;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("statevector hand cases") {
  // H|0> = (|0> + |1>)/sqrt(2)
  Circuit h1(1);
  h1.append_clifford(CliffordKind::H, 0);
  auto psi = oracle::statevector(h1);
  CHECK(std::abs(psi[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psi[1] - 1.0 / std::sqrt(2.0)) < 1e-15);

  // AllPlus initial state is the uniform superposition.
  const Circuit plus(2, InitialState::AllPlus);
  psi = oracle::statevector(plus);
  for (const auto& a : psi) CHECK(std::abs(a - 0.5) < 1e-15);

  // exp(-i pi X / 2)|0> = -i |1>
  Circuit rx(1);
  rx.append_rotation(PauliString::single(1, 0, 'X'), ParamRef::bound(M_PI));
  psi = oracle::statevector(rx);
  CHECK(std::abs(psi[0]) < 1e-15);
  CHECK(std::abs(psi[1] - std::complex<double>(0.0, -1.0)) < 1e-15);

  // Bell state via H + CNOT; qubit 0 is the low index bit.
  Circuit bell(2);
  bell.append_clifford(CliffordKind::H, 0);
  bell.append_cnot(0, 1);
  psi = oracle::statevector(bell);
  CHECK(std::abs(psi[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psi[3] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psi[1]) < 1e-15);
  CHECK(std::abs(psi[2]) < 1e-15);
}

TEST_CASE("statevector matches the dense matrix chain on random circuits") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);  // 2..5
    const auto init = (trial % 2) ? InitialState::AllPlus : InitialState::AllZero;
    const Circuit c = testutil::random_circuit(rng, n, 18, init);

    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(dim);
    if (init == InitialState::AllZero) {
      v0(0) = 1.0;
    } else {
      v0.setConstant(std::pow(2.0, -0.5 * n));
    }
    const Eigen::VectorXcd expect = testref::dense_circuit(c) * v0;
    const auto psi = oracle::statevector(c);
    for (Eigen::Index i = 0; i < dim; ++i) CHECK(std::abs(psi[static_cast<std::size_t>(i)] - expect(i)) < 1e-12);
  }
}

TEST_CASE("word expectation matches dense") {
  std::mt19937_64 rng(1618);
  const int n = 4;
  const Circuit c = testutil::random_circuit(rng, n, 15, InitialState::AllZero);
  const auto psi = oracle::statevector(c);
  Eigen::VectorXcd v(1 << n);
  for (int i = 0; i < (1 << n); ++i) v(i) = psi[static_cast<std::size_t>(i)];

  for (int trial = 0; trial < 10; ++trial) {
    const PauliString w = testutil::random_word(rng, n, n);
    const std::complex<double> direct = oracle::expectation(psi, w);
    const std::complex<double> dense = v.dot(testref::dense_word(w) * v);
    CHECK(std::abs(direct - dense) < 1e-12);
  }

  const SparseOperator op = testutil::random_observable(rng, n, 8, 3);
  double dense_sum = 0.0;
  for (const auto& t : op.sorted_terms())
    dense_sum += t.coeff * v.dot(testref::dense_word(t.word) * v).real();
  CHECK(std::abs(oracle::expectation(psi, op) - dense_sum) < 1e-12);
}

TEST_CASE("tfim free-fermion energy matches dense diagonalization") {
  for (const double gx : {0.5, 1.0, 1.5}) {
    for (const int n : {4, 6, 8, 10}) {
      const double dense = oracle::exact_ground_energy_small(ising_chain_hamiltonian(n, gx, 0.0));
      const double ff = oracle::exact_tfim_energy(n, gx);
      CHECK(std::abs(dense - ff) < 1e-10);
    }
  }
}

TEST_CASE("lanczos path agrees with the free-fermion formula at n = 12") {
  const double lanczos = oracle::exact_ground_energy_small(ising_chain_hamiltonian(12, 1.2, 0.0));
  CHECK(std::abs(lanczos - oracle::exact_tfim_energy(12, 1.2)) < 1e-8);
}

TEST_CASE("kitaev reference energies") {
  CHECK(std::abs(oracle::exact_kitaev_energy(8, 6, 0.3, 0.3, 1.0) - (-25.0873)) < 1e-3);
  CHECK(std::abs(oracle::exact_kitaev_energy(8, 6, 0.6, 0.6, 1.0) - (-28.5876)) < 1e-3);
}

TEST_CASE("kitaev decoupled point") {
  // jx = jy = 0: N/2 independent Z dimers, energy -N/2.
  CHECK(oracle::exact_kitaev_energy(4, 4, 0.0, 0.0, 1.0) == doctest::Approx(-8.0).epsilon(1e-12));
  // Scaling in jz.
  CHECK(oracle::exact_kitaev_energy(4, 4, 0.0, 0.0, 2.0) == doctest::Approx(-16.0).epsilon(1e-12));
}

TEST_CASE("kitaev x-y coupling symmetry in the periodic sector") {
  const Lattice lat = honeycomb_square_pbc(8, 6);
  CHECK(std::abs(oracle::kitaev_sector_energy(lat, 0.3, 0.9, 1.0, +1, +1) -
                 oracle::kitaev_sector_energy(lat, 0.9, 0.3, 1.0, +1, +1)) < 1e-10);
}

TEST_CASE("kitaev sector energies match the momentum-space formula") {
  // (d1, d2) grid offsets vs (sx, sy) boundary phases.
  const struct { double d1, d2; int sx, sy; } sectors[] = {
      {0.0, 0.0, +1, +1}, {0.0, 0.5, +1, -1}, {0.5, 0.0, -1, +1}, {0.5, 0.5, -1, -1}};
  for (const auto& size : {std::pair{4, 4}, std::pair{8, 6}}) {
    const auto [nx, ny] = size;
    const Lattice lat = honeycomb_square_pbc(nx, ny);
    for (const auto& s : sectors) {
      for (const auto& j : {std::pair{1.0, 1.0}, std::pair{0.3, 1.0}, std::pair{0.6, 0.8}}) {
        const auto [jxy, jz] = j;
        const double svd = oracle::kitaev_sector_energy(lat, jxy, jxy, jz, s.sx, s.sy);
        const double kspace = kspace_energy(nx, ny, jxy, jxy, jz, s.d1, s.d2);
        CHECK(std::abs(svd - kspace) < 1e-8);
      }
    }
  }
}

TEST_CASE("kitaev sector minimum reproduces the many-body ground state at 4x4") {
  const Lattice lat = honeycomb_square_pbc(4, 4);
  for (const auto& j : {std::pair{1.0, 1.0}, std::pair{0.3, 1.0}, std::pair{0.6, 1.0}}) {
    const auto [jxy, jz] = j;
    double best = 0.0;
    for (const int sx : {+1, -1})
      for (const int sy : {+1, -1})
        best = std::min(best, oracle::kitaev_sector_energy(lat, jxy, jxy, jz, sx, sy));
    const double dense = oracle::exact_ground_energy_small(kitaev_hamiltonian(lat, jxy, jxy, jz));
    CHECK(std::abs(best - dense) < 1e-9);
  }
}

TEST_CASE("errors") {
  Circuit unbound(2);
  unbound.append_rotation(PauliString::single(2, 0, 'X'), ParamRef::free(0));
  CHECK_THROWS_AS(oracle::statevector(unbound), std::invalid_argument);
  CHECK_THROWS_AS(oracle::exact_tfim_energy(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(oracle::exact_tfim_energy(2, 1.0), std::invalid_argument);
  const Lattice chain = chain_pbc(6);
  CHECK_THROWS_AS(oracle::kitaev_sector_energy(chain, 1, 1, 1, +1, +1), std::invalid_argument);
  CHECK_THROWS_AS(oracle::kitaev_sector_energy(honeycomb_square_pbc(4, 4), 1, 1, 1, 0, 1),
                  std::invalid_argument);
}

}  // TEST_SUITE
