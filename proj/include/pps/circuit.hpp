#pragma once

#include <span>
#include <string>
#include <vector>

#include "pps/pauli.hpp"

namespace pps {

/// Angle slot of a rotation gate: either a free parameter index into the
/// theta vector, or a bound literal value.
class ParamRef {
 public:
  static ParamRef free(int index) {
    if (index < 0) throw std::invalid_argument("ParamRef::free: negative index");
    ParamRef p;
    p.index_ = index;
    return p;
  }
  static ParamRef bound(double value) {
    ParamRef p;
    p.value_ = value;
    return p;
  }

  bool is_bound() const { return index_ < 0; }
  int index() const {
    if (is_bound()) throw std::logic_error("ParamRef::index on bound param");
    return index_;
  }
  double value() const {
    if (!is_bound()) throw std::logic_error("ParamRef::value on free param");
    return value_;
  }
  /// Angle under a concrete parameter vector.
  double resolve(std::span<const double> theta) const;

 private:
  int index_ = -1;
  double value_ = 0.0;
};

enum class CliffordKind { H, S, Sdg, CNOT };

struct Gate {
  enum class Type { Rotation, Clifford };
  Type type = Type::Clifford;

  // Rotation: exp(-i * sign * theta/2 * axis).
  PauliString axis;
  ParamRef angle = ParamRef::bound(0.0);
  int sign = +1;

  // Clifford.
  CliffordKind clifford = CliffordKind::H;
  int q0 = 0, q1 = -1;  // q1 used by CNOT only (control=q0, target=q1)

  static Gate rotation(PauliString axis, ParamRef angle, int sign = +1);
  static Gate clifford1(CliffordKind k, int q);
  static Gate cnot(int control, int target);
};

enum class InitialState { AllZero, AllPlus };

/// A gate list in application order: gates[0] acts first on the initial state.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n, InitialState init = InitialState::AllZero) : n_(n), init_(init) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("Circuit: qubit count out of range");
  }

  int n_qubits() const { return n_; }
  InitialState initial_state() const { return init_; }
  void set_initial_state(InitialState s) { init_ = s; }

  int param_count() const { return param_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(Gate g);
  void append_rotation(const PauliString& axis, ParamRef angle, int sign = +1) {
    append(Gate::rotation(axis, angle, sign));
  }
  void append_clifford(CliffordKind k, int q) { append(Gate::clifford1(k, q)); }
  void append_cnot(int control, int target) { append(Gate::cnot(control, target)); }

  /// Copy with every free parameter bound from theta.
  Circuit bind(std::span<const double> theta) const;

  std::size_t rotation_count() const;
  /// Parametrized rotations whose axis weight is >= 2.
  std::size_t two_qubit_rotation_count() const;

  std::string to_json() const;
  static Circuit from_json(const std::string& text);

 private:
  int n_ = 0;
  InitialState init_ = InitialState::AllZero;
  int param_count_ = 0;
  std::vector<Gate> gates_;
};

/// Operator product a.b: b's gates run first and b's prefix position supplies
/// the initial state; a's free parameter indices are shifted past b's.
Circuit compose(const Circuit& a, const Circuit& b);

}  // namespace pps
