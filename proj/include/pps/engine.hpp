#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pps/circuit.hpp"
#include "pps/sparse_op.hpp"

namespace pps {

/// Forward Clifford conjugation g P g^dagger of a single word (tableau rules:
/// H swaps X/Z, S maps X -> Y -> -X, CNOT copies X forward / Z backward).
/// Returns true when the conjugated word picks up a minus sign.
bool clifford_conjugate(PauliString& p, CliffordKind kind, int q0, int q1 = -1);

struct GateTrace {
  int gate_index = 0;               // position in the circuit (program order)
  std::size_t terms_before = 0;     // term count entering the gate
  std::size_t terms_after = 0;      // term count after the gate + truncation
};

struct EngineStats {
  std::size_t max_terms = 0;       // peak surviving-term count over the walk
  std::size_t split_rotations = 0; // rotations that branched at least once
  std::vector<GateTrace> trace;    // filled only when record_trace is set
};

struct EngineOptions {
  double delta_c = 0.0;  // coefficients with |a| <= delta_c are discarded
  int shards = 1;        // > 1 enables the sharded (OpenMP) kernels
  bool record_trace = false;
};

/// Heisenberg-picture propagation of sparse Pauli-sum observables through a
/// circuit, walked back to front with per-gate coefficient truncation.
class Engine {
 public:
  Engine() = default;
  explicit Engine(EngineOptions opts);

  /// V^dagger O V for the fully bound circuit.
  SparseOperator evolve(const SparseOperator& obs, const Circuit& circ) const;
  SparseOperator evolve(const SparseOperator& obs, const Circuit& circ,
                        std::span<const double> theta) const;

  /// <init| V^dagger O V |init> using the circuit's initial product state.
  double expectation(const SparseOperator& obs, const Circuit& circ) const;
  double expectation(const SparseOperator& obs, const Circuit& circ,
                     std::span<const double> theta) const;

  const EngineOptions& options() const { return opts_; }
  void set_delta_c(double d) { opts_.delta_c = d; }
  void set_shards(int s) { opts_.shards = s; }

  /// Statistics from the most recent evolve/expectation call.
  const EngineStats& stats() const { return stats_; }

 private:
  EngineOptions opts_{};
  mutable EngineStats stats_{};
};

namespace kernel {

/// Serial reference: conjugate every term by exp(+i angle/2 axis) ... i.e.
/// R^dagger P R for R = exp(-i angle/2 axis); anticommuting terms split into
/// cos/sin branches, then coefficients with |a| <= delta_c are dropped.
void rotation_adjoint_serial(SparseOperator& op, const PauliString& axis,
                             double angle, double delta_c);

/// Serial reference: op <- g^dagger op g for the given Clifford gate.
void clifford_adjoint_serial(SparseOperator& op, CliffordKind kind, int q0, int q1 = -1);

/// Shard-by-key-hash views used by the parallel kernels.
using ShardedOp = std::vector<SparseOperator::TermMap>;

ShardedOp shard_split(const SparseOperator& op, int shards);
SparseOperator shard_join(const ShardedOp& shards, int n_qubits);

void rotation_adjoint_sharded(ShardedOp& op, const PauliString& axis,
                              double angle, double delta_c);
void clifford_adjoint_sharded(ShardedOp& op, CliffordKind kind, int q0, int q1 = -1);

std::size_t shard_term_count(const ShardedOp& op);

}  // namespace kernel

/// Shard count used when EngineOptions.shards is given as 0 ("auto"): the
/// PPS_SHARDS environment variable if set, else 4x the OpenMP thread count.
int default_shard_count();

}  // namespace pps
