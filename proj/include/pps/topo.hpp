#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pps/circuit.hpp"
#include "pps/engine.hpp"
#include "pps/lattice.hpp"

namespace pps {

/// Dimer encoding used by the flux-free construction: every vertical Z bond
/// of the honeycomb mapping carries one effective qubit with code basis
/// |0> = |00>, |1> = |11> (top site listed first). Effective qubits share the
/// face indexing e = r*(nx/2) + (c - r%2)/2 over bond positions (r, c),
/// r + c even.
struct EffectiveLayout {
  int nx = 0, ny = 0;
  int n_phys = 0, n_eff = 0;
  std::vector<int> top, bottom, row, col;  // per effective qubit

  static EffectiveLayout build(const Lattice& lat);
  int eff_at(int r, int c) const;  // r + c must be even (mod wrap)
};

/// Encoded one- and two-qubit Cliffords appended as physical gates:
///   Zbar = Z(top), Xbar = X(top)X(bottom),
///   Sbar = S(top),
///   Hbar = CNOT(top,bottom) H(top) CNOT(top,bottom),
///   CNOTbar = CNOT(top_c, top_t) CNOT(top_c, bottom_t).
void append_eff_s(Circuit& c, const EffectiveLayout& lay, int e);
void append_eff_sdg(Circuit& c, const EffectiveLayout& lay, int e);
void append_eff_h(Circuit& c, const EffectiveLayout& lay, int e);
void append_eff_cnot(Circuit& c, const EffectiveLayout& lay, int ec, int et);

/// Clifford preparation of the flux-free state: starting from |0...0>, a
/// toric-code sweep on the effective lattice creates the checkerboard of
/// plaquette checks, and the closing basis rotation (Hbar on odd-row
/// effective qubits, then Sbar everywhere) turns them into the physical
/// hexagon operators. The result satisfies W_P = +1 on every face and
/// ZZ = +1 on every vertical bond. Requires even nx, ny >= 4.
Circuit flux_free_circuit(const Lattice& lat);

/// Anyon interferometry data: pair-creation words (applied in order as pi
/// rotations when realized as gates) and the braid loop given as an ordered
/// list of Pauli factors (first factor acts first).
struct BraidSpec {
  std::string kind;  // "em", "epsi" or "mpsi"
  std::vector<PauliString> creation;
  std::vector<PauliString> braid_factors;
};

/// Builds the braid specification on the given honeycomb lattice:
///   em   - e pair and m pair, loop of single-site letters around face (1,1);
///   epsi - e pair plus fermion pair, hexagon bond loop around face (2,2);
///   mpsi - m pair plus fermion pair, hexagon bond loop around face (1,1).
/// On the 8x6 lattice the em creation words use the longer dressed strings
/// that pin the anyons away from the loop.
BraidSpec make_braid_spec(const std::string& kind, const Lattice& lat);

/// Collapses spec.braid_factors into a single word: product = phase * word
/// with phase in {1, i, -1, -i}.
std::pair<std::complex<double>, PauliString> braid_word(const BraidSpec& spec);

/// Interferometry by operator reduction: the creation conjugation collapses
/// to a commutation sign, the loop to phase * word, and the engine supplies
/// <psi(theta)| word |psi(theta)>.
std::complex<double> braiding_phase(const BraidSpec& spec, const Circuit& circ,
                                    std::span<const double> theta,
                                    const Engine& engine);

enum class AncillaBasis { X, Y };

/// Hadamard-test realization on n+1 qubits (ancilla last): prep circuit,
/// creation words as pi rotations, H on the ancilla, the controlled braid
/// loop (with S^k supplying the loop's internal phase), then the basis
/// rotation so that <Z_ancilla> reads Re (X basis) or Im (Y basis) of the
/// braiding phase.
Circuit controlled_braid_circuit(const BraidSpec& spec, const Circuit& prep,
                                 std::span<const double> theta, AncillaBasis basis);

void save_braid_spec(const BraidSpec& spec, const std::string& path);
BraidSpec load_braid_spec(const std::string& path);

}  // namespace pps
