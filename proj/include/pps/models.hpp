#pragma once

#include "pps/circuit.hpp"
#include "pps/lattice.hpp"
#include "pps/sparse_op.hpp"

namespace pps {

/// H = -sum_<ij> Z_i Z_j - gx sum_i X_i - gz sum_i Z_i on the periodic chain.
SparseOperator ising_chain_hamiltonian(int n, double gx, double gz);

/// H = -sum_<ij> Z_i Z_j - gx sum_i X_i on an arbitrary bond graph
/// (periodic square lattice, heavy-hex, ...).
SparseOperator ising_hamiltonian(const Lattice& lat, double gx, double gz = 0.0);

/// H = -Jx sum_x XX - Jy sum_y YY - Jz sum_z ZZ on the honeycomb mapping.
SparseOperator kitaev_hamiltonian(const Lattice& lat, double jx, double jy, double jz);

/// Translation-invariant proxy costs: a handful of representative terms whose
/// multiplicities reproduce the full energy on a translation-symmetric state.
/// Chain: -n*(Z0Z1 + gx X0 + gz Z0).
SparseOperator ising_chain_proxy(int n, double gx, double gz);
/// Square: -nx*ny*(Z0 Z1 + Z0 Z_nx + gx X1) imitating one site's bond star.
SparseOperator ising_square_proxy(int nx, int ny, double gx);
/// Kitaev: (nx*ny/2) * (-Jx X0X1 - Jy Y_nx Y_{nx+1} - Jz Z2 Z_{nx+2});
/// exactly three terms, one representative bond per type.
SparseOperator kitaev_proxy(int nx, int ny, double jx, double jy, double jz);

/// Brickwork variational circuit for transverse/longitudinal-field Ising:
/// |+...+> initial state; each repetition applies
///   exp(-i g/2 ZZ) on every bond, exp(-i b/2 X) and exp(-i a/2 Z) on every
/// site, with free parameters ordered (g_1, b_1, a_1, g_2, ...).
Circuit ising_ansatz(const Lattice& lat, int reps);

/// Kitaev HVA: the flux-free Clifford circuit V_ff followed by repetitions of
/// exp(-i g/2 XX) on X bonds, exp(-i b/2 YY) on Y bonds, exp(-i a/2 ZZ) on
/// Z bonds; parameters ordered (g_1, b_1, a_1, g_2, ...).
Circuit kitaev_ansatz(const Lattice& lat, int reps);

}  // namespace pps
