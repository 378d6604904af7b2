#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pps/circuit.hpp"
#include "pps/sparse_op.hpp"

namespace pps {
struct Lattice;  // lattice.hpp
}

namespace pps::oracle {

/// Dense state-vector simulation of a bound circuit. Hard cap n <= 24.
std::vector<std::complex<double>> statevector(const Circuit& circuit);
std::vector<std::complex<double>> statevector(const Circuit& circuit,
                                              std::span<const double> theta);

/// <psi| P |psi> for a single Pauli word (generally complex for non-Hermitian
/// combinations; real up to rounding for Hermitian words).
std::complex<double> expectation(const std::vector<std::complex<double>>& psi,
                                 const PauliString& word);
/// <psi| O |psi> for a real-coefficient sparse operator.
double expectation(const std::vector<std::complex<double>>& psi, const SparseOperator& op);

/// Convenience: oracle expectation of op on circuit(theta)'s output state.
double circuit_expectation(const Circuit& circuit, const SparseOperator& op,
                           std::span<const double> theta);

/// Exact 1D transverse-field Ising ground energy, H = -sum ZZ - gx sum X,
/// periodic chain of even n, via the free-fermion spectrum with the
/// parity-consistent minimum over both fermion sectors.
double exact_tfim_energy(int n, double gx);

/// Flux-free-sector energy of the Kitaev honeycomb model on the periodic
/// (nx, ny) lattice with fermion boundary phases (sx, sy) in {+1, -1}:
/// minus the sum of singular values of the inter-sublattice coupling matrix.
double kitaev_sector_energy(const Lattice& lat, double jx, double jy, double jz,
                            int sx, int sy);

/// Reference torus ground energy of the Kitaev honeycomb model: the flux-free
/// sector with fully periodic fermion boundary conditions. (The minimum over
/// the four boundary sectors can dip below this value, but those deeper
/// free-fermion vacua carry the wrong fermion parity and are unphysical on
/// small tori; the periodic sector is the convention the bundled reference
/// energies use.)
double exact_kitaev_energy(int nx, int ny, double jx, double jy, double jz);
double exact_kitaev_energy(const Lattice& lat, double jx, double jy, double jz);

/// Lowest eigenvalue of a sparse Hermitian operator: dense solve for n <= 12,
/// Lanczos with full reorthogonalization for n <= 16.
double exact_ground_energy_small(const SparseOperator& h);

}  // namespace pps::oracle
