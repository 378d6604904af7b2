#pragma once

#include <string>

#include "pps/circuit.hpp"

namespace pps {

/// OpenQASM 2.0 text for a fully bound circuit. Pauli rotations are lowered to
/// per-site basis changes (H for X, Sdg;H for Y) around a CNOT ladder and one
/// rz; an AllPlus initial state becomes a leading H column. Every emitted gate
/// is one of {h, s, sdg, cx, rz}.
std::string to_qasm(const Circuit& circuit);
std::string to_qasm(const Circuit& circuit, std::span<const double> theta);

/// Parse the gate subset emitted by to_qasm (plus x/y/z for convenience).
/// The initial state is AllZero; a leading H on every qubit is NOT folded back
/// into AllPlus, it round-trips as explicit gates.
Circuit parse_qasm(const std::string& text);

}  // namespace pps
