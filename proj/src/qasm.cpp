#include "pps/qasm.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace pps {

namespace {

void emit_rotation(std::ostream& os, const PauliString& axis, double angle, int sign) {
  std::vector<int> sites;
  for (int q = 0; q < axis.n_qubits(); ++q)
    if (axis.letter(q) != 'I') sites.push_back(q);
  // Basis changes mapping each letter to Z.
  for (int q : sites) {
    const char l = axis.letter(q);
    if (l == 'X') {
      os << "h q[" << q << "];\n";
    } else if (l == 'Y') {
      os << "sdg q[" << q << "];\n";
      os << "h q[" << q << "];\n";
    }
  }
  for (std::size_t i = 0; i + 1 < sites.size(); ++i)
    os << "cx q[" << sites[i] << "],q[" << sites[i + 1] << "];\n";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", sign * angle);
  os << "rz(" << buf << ") q[" << sites.back() << "];\n";
  for (std::size_t i = sites.size() - 1; i-- > 0;)
    os << "cx q[" << sites[i] << "],q[" << sites[i + 1] << "];\n";
  for (int q : sites) {
    const char l = axis.letter(q);
    if (l == 'X') {
      os << "h q[" << q << "];\n";
    } else if (l == 'Y') {
      os << "h q[" << q << "];\n";
      os << "s q[" << q << "];\n";
    }
  }
}

}  // namespace

std::string to_qasm(const Circuit& circuit) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << circuit.n_qubits() << "];\n";
  if (circuit.initial_state() == InitialState::AllPlus)
    for (int q = 0; q < circuit.n_qubits(); ++q) os << "h q[" << q << "];\n";
  for (const auto& g : circuit.gates()) {
    if (g.type == Gate::Type::Rotation) {
      if (!g.angle.is_bound())
        throw std::invalid_argument("to_qasm: circuit has unbound parameters");
      emit_rotation(os, g.axis, g.angle.value(), g.sign);
    } else {
      switch (g.clifford) {
        case CliffordKind::H: os << "h q[" << g.q0 << "];\n"; break;
        case CliffordKind::S: os << "s q[" << g.q0 << "];\n"; break;
        case CliffordKind::Sdg: os << "sdg q[" << g.q0 << "];\n"; break;
        case CliffordKind::CNOT: os << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n"; break;
      }
    }
  }
  return os.str();
}

std::string to_qasm(const Circuit& circuit, std::span<const double> theta) {
  return to_qasm(circuit.bind(theta));
}

namespace {

// "q[3]" -> 3
int parse_qubit(const std::string& tok) {
  auto l = tok.find('['), r = tok.find(']');
  if (l == std::string::npos || r == std::string::npos || r <= l + 1)
    throw std::invalid_argument("parse_qasm: bad qubit reference: " + tok);
  return std::stoi(tok.substr(l + 1, r - l - 1));
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
  std::istringstream is(text);
  std::string stmt;
  Circuit c;
  bool have_reg = false;
  // Statements are ';'-terminated; comments are '//' to end of line.
  std::string raw;
  std::string cleaned;
  while (std::getline(is, raw)) {
    auto slash = raw.find("//");
    if (slash != std::string::npos) raw.erase(slash);
    cleaned += raw + '\n';
  }
  std::istringstream ss(cleaned);
  while (std::getline(ss, stmt, ';')) {
    std::istringstream ts(stmt);
    std::string op;
    if (!(ts >> op)) continue;
    if (op == "OPENQASM" || op == "include" || op == "creg" || op == "barrier" ||
        op == "measure")
      continue;
    if (op == "qreg") {
      std::string reg;
      ts >> reg;
      c = Circuit(parse_qubit(reg), InitialState::AllZero);
      have_reg = true;
      continue;
    }
    if (!have_reg) throw std::invalid_argument("parse_qasm: gate before qreg");
    if (op == "cx") {
      std::string rest, a, b;
      std::getline(ts, rest);
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("parse_qasm: bad cx: " + stmt);
      c.append_cnot(parse_qubit(rest.substr(0, comma)), parse_qubit(rest.substr(comma + 1)));
    } else if (op == "h" || op == "s" || op == "sdg" || op == "x" || op == "y" || op == "z") {
      std::string reg;
      ts >> reg;
      const int q = parse_qubit(reg);
      if (op == "h")
        c.append_clifford(CliffordKind::H, q);
      else if (op == "s")
        c.append_clifford(CliffordKind::S, q);
      else if (op == "sdg")
        c.append_clifford(CliffordKind::Sdg, q);
      else  // Pauli gate: a pi rotation; the global phase is irrelevant here.
        c.append_rotation(
            PauliString::single(c.n_qubits(), q, static_cast<char>(op[0] - 'a' + 'A')),
            ParamRef::bound(3.14159265358979323846));
    } else if (op.rfind("rz(", 0) == 0) {
      std::string reg;
      ts >> reg;
      // The angle may contain no spaces (we emit it that way).
      auto r = op.find(')');
      if (r == std::string::npos) throw std::invalid_argument("parse_qasm: bad rz: " + stmt);
      const double angle = std::stod(op.substr(3, r - 3));
      c.append_rotation(PauliString::single(c.n_qubits(), parse_qubit(reg), 'Z'),
                        ParamRef::bound(angle));
    } else {
      throw std::invalid_argument("parse_qasm: unsupported statement: " + stmt);
    }
  }
  return c;
}

}  // namespace pps
