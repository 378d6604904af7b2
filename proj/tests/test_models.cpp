#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pps/engine.hpp"
#include "pps/lattice.hpp"
#include "pps/models.hpp"
#include "pps/oracle.hpp"

using namespace pps;

TEST_SUITE("models") {

TEST_CASE("ising chain hamiltonian terms") {
  const SparseOperator h = ising_chain_hamiltonian(6, 1.3, 0.4);
  CHECK(h.size() == 18);  // 6 ZZ + 6 X + 6 Z
  PauliString zz(6);
  zz.set_letter(0, 'Z');
  zz.set_letter(1, 'Z');
  CHECK(h.coeff(zz) == -1.0);
  CHECK(h.coeff(PauliString::single(6, 2, 'X')) == -1.3);
  CHECK(h.coeff(PauliString::single(6, 3, 'Z')) == -0.4);

  // gz = 0 drops the longitudinal column entirely.
  CHECK(ising_chain_hamiltonian(6, 1.3, 0.0).size() == 12);
}

TEST_CASE("ising hamiltonian on a general lattice") {
  const Lattice lat = square_pbc(4, 3);
  const SparseOperator h = ising_hamiltonian(lat, 0.9);
  CHECK(h.size() == 24 + 12);
  PauliString zz(12);
  zz.set_letter(0, 'Z');
  zz.set_letter(1, 'Z');
  CHECK(h.coeff(zz) == -1.0);
  CHECK(h.coeff(PauliString::single(12, 5, 'X')) == -0.9);
}

TEST_CASE("kitaev hamiltonian carries one term per bond") {
  const Lattice lat = honeycomb_square_pbc(4, 4);
  const SparseOperator h = kitaev_hamiltonian(lat, 0.3, 0.7, 1.1);
  CHECK(h.size() == 24);
  PauliString xx(16);  // X bond (0,0)-(0,1)
  xx.set_letter(0, 'X');
  xx.set_letter(1, 'X');
  CHECK(h.coeff(xx) == doctest::Approx(-0.3).epsilon(1e-15));
  PauliString yy(16);  // Y bond (1,0)-(1,1)
  yy.set_letter(4, 'Y');
  yy.set_letter(5, 'Y');
  CHECK(h.coeff(yy) == doctest::Approx(-0.7).epsilon(1e-15));
  PauliString zz(16);  // Z bond (0,0)-(1,0)
  zz.set_letter(0, 'Z');
  zz.set_letter(4, 'Z');
  CHECK(h.coeff(zz) == doctest::Approx(-1.1).epsilon(1e-15));
}

TEST_CASE("kitaev proxy has exactly three terms") {
  const SparseOperator proxy = kitaev_proxy(8, 6, 0.3, 0.3, 1.0);
  CHECK(proxy.size() == 3);
}

TEST_CASE("chain proxy equals the full energy on translation-invariant states") {
  const int n = 6;
  const Lattice lat = chain_pbc(n);
  const Circuit ansatz = ising_ansatz(lat, 2);
  const SparseOperator full = ising_chain_hamiltonian(n, 1.2, 0.3);
  const SparseOperator proxy = ising_chain_proxy(n, 1.2, 0.3);
  CHECK(proxy.size() == 3);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> theta(static_cast<std::size_t>(ansatz.param_count()));
    for (auto& t : theta) t = u(rng);
    const double ef = oracle::circuit_expectation(ansatz, full, theta);
    const double ep = oracle::circuit_expectation(ansatz, proxy, theta);
    CHECK(std::abs(ef - ep) < 1e-10);
  }
}

TEST_CASE("square proxy equals the full energy on translation-invariant states") {
  const Lattice lat = square_pbc(4, 4);
  const Circuit ansatz = ising_ansatz(lat, 1);
  const SparseOperator full = ising_hamiltonian(lat, 0.8);
  const SparseOperator proxy = ising_square_proxy(4, 4, 0.8);
  CHECK(proxy.size() == 3);

  const std::vector<double> theta = {0.37, -0.82, 0.11};
  const double ef = oracle::circuit_expectation(ansatz, full, theta);
  const double ep = oracle::circuit_expectation(ansatz, proxy, theta);
  CHECK(std::abs(ef - ep) < 1e-10);
}

TEST_CASE("kitaev proxy equals the full energy on the hva state") {
  const Lattice lat = honeycomb_square_pbc(4, 4);
  const Circuit ansatz = kitaev_ansatz(lat, 1);
  const SparseOperator full = kitaev_hamiltonian(lat, 0.6, 0.6, 1.0);
  const SparseOperator proxy = kitaev_proxy(4, 4, 0.6, 0.6, 1.0);

  const std::vector<double> theta = {0.23, -0.51, 0.4};
  const double ef = oracle::circuit_expectation(ansatz, full, theta);
  const double ep = oracle::circuit_expectation(ansatz, proxy, theta);
  CHECK(std::abs(ef - ep) < 1e-10);
}

TEST_CASE("ising ansatz structure") {
  const Lattice lat = chain_pbc(6);
  const Circuit c = ising_ansatz(lat, 2);
  CHECK(c.initial_state() == InitialState::AllPlus);
  CHECK(c.param_count() == 6);  // (g, b, a) per repetition
  CHECK(c.rotation_count() == 2 * (6 + 6 + 6));
  CHECK(c.two_qubit_rotation_count() == 12);

  // First repetition: bond rotations bind parameter 0, X field 1, Z field 2.
  const auto& gates = c.gates();
  CHECK(gates[0].axis.weight() == 2);
  CHECK(gates[0].angle.index() == 0);
  CHECK(gates[6].axis.weight() == 1);
  CHECK(gates[6].angle.index() == 1);
  CHECK(gates[12].angle.index() == 2);
  CHECK(gates[18].angle.index() == 3);  // second repetition starts
}

TEST_CASE("kitaev ansatz starts from the flux-free circuit") {
  const Lattice lat = honeycomb_square_pbc(4, 4);
  const Circuit c = kitaev_ansatz(lat, 3);
  CHECK(c.param_count() == 9);
  CHECK(c.two_qubit_rotation_count() == 3 * 24);
  CHECK(c.initial_state() == InitialState::AllZero);
  // The preparation prefix is Clifford-only.
  CHECK(c.gates().front().type == Gate::Type::Clifford);
  // Parameters appear in (gamma, beta, alpha) repetition order.
  bool saw_rotation = false;
  int first_index = -1;
  for (const auto& g : c.gates()) {
    if (g.type == Gate::Type::Rotation && !saw_rotation) {
      saw_rotation = true;
      first_index = g.angle.index();
    }
  }
  CHECK(first_index == 0);
}

TEST_CASE("ansatz energies at theta = 0") {
  // Ising: AllPlus with no rotations gives <H> = -gx * N.
  const Lattice chain = chain_pbc(8);
  const Circuit ia = ising_ansatz(chain, 3);
  const std::vector<double> zeros9(9, 0.0);
  const Engine eng;
  CHECK(eng.expectation(ising_chain_hamiltonian(8, 1.7, 0.0), ia, zeros9) ==
        doctest::Approx(-1.7 * 8).epsilon(1e-12));

  // Kitaev: the flux-free state carries <ZZ> = 1 on z-bonds and zero on the
  // anticommuting XX / YY bonds, so <H> = -jz * N/2.
  const Lattice hex = honeycomb_square_pbc(4, 4);
  const Circuit ka = kitaev_ansatz(hex, 2);
  const std::vector<double> zeros6(6, 0.0);
  CHECK(eng.expectation(kitaev_hamiltonian(hex, 0.6, 0.6, 1.0), ka, zeros6) ==
        doctest::Approx(-8.0).epsilon(1e-12));
}

}  // TEST_SUITE
