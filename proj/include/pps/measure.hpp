#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pps/circuit.hpp"
#include "pps/engine.hpp"
#include "pps/lattice.hpp"

namespace pps {

/// Mean magnetization (1/n) sum_j <Z_j>, evolved as one operator.
double magnetization_z(const Engine& eng, const Circuit& circ,
                       std::span<const double> theta);

/// <P_uv> per bond, letters from the bond type (ZZ for Generic bonds).
std::vector<double> bond_expectations(const Engine& eng, const Lattice& lat,
                                      const Circuit& circ, std::span<const double> theta);

/// Reduced density matrix over `region` (bit k of the matrix index is
/// region[k]) reconstructed from 4^|region| Heisenberg evaluations,
/// |region| <= 8. Evaluations run in parallel when OpenMP is enabled.
Eigen::MatrixXcd tomography(const Engine& eng, const Circuit& circ,
                            std::span<const double> theta, std::span<const int> region);

/// Trace out the complement of `keep` (bit positions into the m-qubit rho,
/// strictly ascending).
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int m,
                               std::span<const int> keep);

/// Base-2 von Neumann entropy. Eigenvalues are clamped to [0, 1]; values
/// escaping by more than 0.01 emit a warning on stderr (tomography noise).
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

struct TopoEntropyReport {
  double s_a = 0, s_b = 0, s_c = 0;
  double s_ab = 0, s_ac = 0, s_bc = 0, s_abc = 0;
  double s_topo = 0;
};

/// Kitaev-Preskill combination S_A + S_B + S_C - S_AB - S_AC - S_BC + S_ABC
/// on the three adjacent two-site regions A = {0, 1}, B = {nx, nx+1},
/// C = {2, nx+2}: one six-qubit tomography, entropies via partial traces.
TopoEntropyReport topological_entropy(const Engine& eng, const Lattice& lat,
                                      const Circuit& circ, std::span<const double> theta);

}  // namespace pps
