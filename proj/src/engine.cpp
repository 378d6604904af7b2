#include "pps/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pps {

namespace {

/// cos/sin magnitudes below this snap to exact zero so that angles which are
/// multiples of pi/2 keep rotations from branching (Clifford points stay
/// Clifford under floating-point angle reduction).
constexpr double kTrigSnap = 1e-14;

struct TrigPair {
  double c, s;
};

TrigPair reduced_trig(double angle) {
  const double r = std::remainder(angle, 2.0 * M_PI);
  double c = std::cos(r), s = std::sin(r);
  if (std::fabs(c) < kTrigSnap) c = 0.0;
  if (std::fabs(s) < kTrigSnap) s = 0.0;
  return {c, s};
}

/// Real part of i * i^k for odd k: the sign the sin branch carries.
double sin_branch_sign(int k) {
  if (k == 3) return 1.0;
  if (k == 1) return -1.0;
  throw std::logic_error("sin branch: product phase must be odd");
}

bool clifford_conjugate_inverse(PauliString& p, CliffordKind kind, int q0, int q1) {
  switch (kind) {
    case CliffordKind::H: return clifford_conjugate(p, CliffordKind::H, q0);
    case CliffordKind::S: return clifford_conjugate(p, CliffordKind::Sdg, q0);
    case CliffordKind::Sdg: return clifford_conjugate(p, CliffordKind::S, q0);
    case CliffordKind::CNOT: return clifford_conjugate(p, CliffordKind::CNOT, q0, q1);
  }
  throw std::logic_error("bad clifford kind");
}

std::size_t shard_of(const PauliString& p, std::size_t shards) {
  return PauliHash{}(p) % shards;
}

}  // namespace

bool clifford_conjugate(PauliString& p, CliffordKind kind, int q0, int q1) {
  switch (kind) {
    case CliffordKind::H: {
      const bool x = p.x_bit(q0), z = p.z_bit(q0);
      p.set_x_bit(q0, z);
      p.set_z_bit(q0, x);
      return x && z;
    }
    case CliffordKind::S: {
      const bool x = p.x_bit(q0), z = p.z_bit(q0);
      p.set_z_bit(q0, z ^ x);
      return x && z;
    }
    case CliffordKind::Sdg: {
      const bool x = p.x_bit(q0), z = p.z_bit(q0);
      p.set_z_bit(q0, z ^ x);
      return x && !z;
    }
    case CliffordKind::CNOT: {
      if (q1 < 0) throw std::invalid_argument("CNOT needs a target qubit");
      const bool xc = p.x_bit(q0), zc = p.z_bit(q0);
      const bool xt = p.x_bit(q1), zt = p.z_bit(q1);
      p.set_x_bit(q1, xt ^ xc);
      p.set_z_bit(q0, zc ^ zt);
      return xc && zt && (xt == zc);
    }
  }
  throw std::logic_error("bad clifford kind");
}

namespace kernel {

void rotation_adjoint_serial(SparseOperator& op, const PauliString& axis,
                             double angle, double delta_c) {
  auto& map = op.mutable_terms();
  const auto [c, s] = reduced_trig(angle);
  if (c == 1.0 && s == 0.0) return;  // identity rotation

  std::vector<std::pair<PauliString, double>> anti;
  anti.reserve(map.size());
  for (const auto& [p, a] : map)
    if (!commutes(p, axis)) anti.emplace_back(p, a);

  for (const auto& [p, a] : anti) map.find(p)->second *= c;
  if (s != 0.0) {
    for (const auto& [p, a] : anti) {
      const auto [k, q] = multiply(axis, p);
      map[q] += sin_branch_sign(k) * s * a;
    }
  }
  std::erase_if(map, [&](const auto& kv) { return std::fabs(kv.second) <= delta_c; });
}

void clifford_adjoint_serial(SparseOperator& op, CliffordKind kind, int q0, int q1) {
  auto& map = op.mutable_terms();
  SparseOperator::TermMap out;
  out.reserve(map.size());
  for (const auto& [p, a] : map) {
    PauliString q = p;
    const bool flip = clifford_conjugate_inverse(q, kind, q0, q1);
    out.emplace(std::move(q), flip ? -a : a);
  }
  map = std::move(out);
}

ShardedOp shard_split(const SparseOperator& op, int shards) {
  if (shards < 1) throw std::invalid_argument("shard_split: shards >= 1");
  ShardedOp out(static_cast<std::size_t>(shards));
  for (const auto& [p, a] : op.terms())
    out[shard_of(p, out.size())].emplace(p, a);
  return out;
}

SparseOperator shard_join(const ShardedOp& shards, int n_qubits) {
  SparseOperator out(n_qubits);
  std::size_t total = 0;
  for (const auto& m : shards) total += m.size();
  out.reserve(total);
  for (const auto& m : shards)
    for (const auto& [p, a] : m) out.add_term(p, a);
  return out;
}

std::size_t shard_term_count(const ShardedOp& op) {
  std::size_t total = 0;
  for (const auto& m : op) total += m.size();
  return total;
}

void rotation_adjoint_sharded(ShardedOp& op, const PauliString& axis,
                              double angle, double delta_c) {
  const int S = static_cast<int>(op.size());
  const auto [c, s] = reduced_trig(angle);
  if (c == 1.0 && s == 0.0) return;

  using Contribs = std::vector<std::pair<PauliString, double>>;
  // buf[src][dst]: sin-branch contributions produced by shard src whose key
  // hashes to shard dst. Each key receives at most one contribution in total
  // (the axis pairs anticommuting words off bijectively), so the merge order
  // cannot affect the result.
  std::vector<std::vector<Contribs>> buf(S, std::vector<Contribs>(S));

#pragma omp parallel for schedule(dynamic)
  for (int src = 0; src < S; ++src) {
    for (auto& [p, a] : op[src]) {
      if (commutes(p, axis)) continue;
      const double a0 = a;
      a *= c;
      if (s != 0.0) {
        auto [k, q] = multiply(axis, p);
        const std::size_t dst = shard_of(q, S);
        buf[src][dst].emplace_back(std::move(q), sin_branch_sign(k) * s * a0);
      }
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (int dst = 0; dst < S; ++dst) {
    for (int src = 0; src < S; ++src)
      for (const auto& [q, v] : buf[src][dst]) op[dst][q] += v;
    std::erase_if(op[dst], [&](const auto& kv) { return std::fabs(kv.second) <= delta_c; });
  }
}

void clifford_adjoint_sharded(ShardedOp& op, CliffordKind kind, int q0, int q1) {
  const int S = static_cast<int>(op.size());
  using Contribs = std::vector<std::pair<PauliString, double>>;
  std::vector<std::vector<Contribs>> buf(S, std::vector<Contribs>(S));

#pragma omp parallel for schedule(dynamic)
  for (int src = 0; src < S; ++src) {
    for (const auto& [p, a] : op[src]) {
      PauliString q = p;
      const bool flip = clifford_conjugate_inverse(q, kind, q0, q1);
      const std::size_t dst = shard_of(q, S);
      buf[src][dst].emplace_back(std::move(q), flip ? -a : a);
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (int dst = 0; dst < S; ++dst) {
    op[dst].clear();
    for (int src = 0; src < S; ++src)
      for (const auto& [q, v] : buf[src][dst]) op[dst].emplace(q, v);
  }
}

}  // namespace kernel

int default_shard_count() {
  if (const char* env = std::getenv("PPS_SHARDS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
#ifdef _OPENMP
  return 4 * omp_get_max_threads();
#else
  return 1;
#endif
}

Engine::Engine(EngineOptions opts) : opts_(opts) {}

SparseOperator Engine::evolve(const SparseOperator& obs, const Circuit& circ) const {
  return evolve(obs, circ, {});
}

SparseOperator Engine::evolve(const SparseOperator& obs, const Circuit& circ,
                              std::span<const double> theta) const {
  if (obs.n_qubits() != circ.n_qubits())
    throw std::invalid_argument("evolve: observable/circuit qubit mismatch");
  const int shards = opts_.shards <= 0 ? default_shard_count() : opts_.shards;

  stats_ = EngineStats{};
  stats_.max_terms = obs.size();
  const auto& gates = circ.gates();

  auto note = [&](int gate_index, std::size_t pre, std::size_t post) {
    stats_.max_terms = std::max(stats_.max_terms, post);
    if (opts_.record_trace) stats_.trace.push_back({gate_index, pre, post});
  };

  if (shards <= 1) {
    SparseOperator op = obs.truncated(opts_.delta_c);
    for (int i = static_cast<int>(gates.size()) - 1; i >= 0; --i) {
      const Gate& g = gates[i];
      if (g.type == Gate::Type::Rotation) {
        const std::size_t before = op.size();
        kernel::rotation_adjoint_serial(op, g.axis, g.sign * g.angle.resolve(theta),
                                        opts_.delta_c);
        if (op.size() != before) stats_.split_rotations++;
        note(i, before, op.size());
      } else {
        kernel::clifford_adjoint_serial(op, g.clifford, g.q0, g.q1);
        note(i, op.size(), op.size());
      }
    }
    return op;
  }

  kernel::ShardedOp op = kernel::shard_split(obs.truncated(opts_.delta_c), shards);
  for (int i = static_cast<int>(gates.size()) - 1; i >= 0; --i) {
    const Gate& g = gates[i];
    const std::size_t before = kernel::shard_term_count(op);
    if (g.type == Gate::Type::Rotation) {
      kernel::rotation_adjoint_sharded(op, g.axis, g.sign * g.angle.resolve(theta),
                                       opts_.delta_c);
      if (kernel::shard_term_count(op) != before) stats_.split_rotations++;
    } else {
      kernel::clifford_adjoint_sharded(op, g.clifford, g.q0, g.q1);
    }
    note(i, before, kernel::shard_term_count(op));
  }
  return kernel::shard_join(op, circ.n_qubits());
}

double Engine::expectation(const SparseOperator& obs, const Circuit& circ) const {
  return expectation(obs, circ, {});
}

double Engine::expectation(const SparseOperator& obs, const Circuit& circ,
                           std::span<const double> theta) const {
  const SparseOperator evolved = evolve(obs, circ, theta);
  return circ.initial_state() == InitialState::AllZero ? evolved.expectation_all_zero()
                                                       : evolved.expectation_all_plus();
}

}  // namespace pps
