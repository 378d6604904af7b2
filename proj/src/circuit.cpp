#include "pps/circuit.hpp"

#include <json.hpp>

namespace pps {

using nlohmann::json;

double ParamRef::resolve(std::span<const double> theta) const {
  if (is_bound()) return value_;
  if (index_ >= static_cast<int>(theta.size()))
    throw std::invalid_argument("ParamRef::resolve: theta vector too short");
  return theta[static_cast<std::size_t>(index_)];
}

Gate Gate::rotation(PauliString axis, ParamRef angle, int sign) {
  if (axis.identity()) throw std::invalid_argument("rotation: axis must be non-identity");
  if (sign != 1 && sign != -1) throw std::invalid_argument("rotation: sign must be +-1");
  Gate g;
  g.type = Type::Rotation;
  g.axis = std::move(axis);
  g.angle = angle;
  g.sign = sign;
  return g;
}

Gate Gate::clifford1(CliffordKind k, int q) {
  if (k == CliffordKind::CNOT) throw std::invalid_argument("clifford1: CNOT needs two qubits");
  Gate g;
  g.type = Type::Clifford;
  g.clifford = k;
  g.q0 = q;
  return g;
}

Gate Gate::cnot(int control, int target) {
  if (control == target) throw std::invalid_argument("cnot: control == target");
  Gate g;
  g.type = Type::Clifford;
  g.clifford = CliffordKind::CNOT;
  g.q0 = control;
  g.q1 = target;
  return g;
}

void Circuit::append(Gate g) {
  if (g.type == Gate::Type::Rotation) {
    if (g.axis.n_qubits() != n_)
      throw std::invalid_argument("Circuit::append: axis dimension mismatch");
    if (!g.angle.is_bound()) param_count_ = std::max(param_count_, g.angle.index() + 1);
  } else {
    if (g.q0 < 0 || g.q0 >= n_ || (g.clifford == CliffordKind::CNOT && (g.q1 < 0 || g.q1 >= n_)))
      throw std::invalid_argument("Circuit::append: qubit out of range");
  }
  gates_.push_back(std::move(g));
}

Circuit Circuit::bind(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) < param_count_)
    throw std::invalid_argument("Circuit::bind: theta vector too short");
  Circuit out(n_, init_);
  for (const auto& g : gates_) {
    Gate b = g;
    if (g.type == Gate::Type::Rotation && !g.angle.is_bound())
      b.angle = ParamRef::bound(g.angle.resolve(theta));
    out.append(std::move(b));
  }
  return out;
}

std::size_t Circuit::rotation_count() const {
  std::size_t k = 0;
  for (const auto& g : gates_)
    if (g.type == Gate::Type::Rotation) ++k;
  return k;
}

std::size_t Circuit::two_qubit_rotation_count() const {
  std::size_t k = 0;
  for (const auto& g : gates_)
    if (g.type == Gate::Type::Rotation && g.axis.weight() >= 2) ++k;
  return k;
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("compose: dimension mismatch");
  Circuit out(b.n_qubits(), b.initial_state());
  for (const auto& g : b.gates()) out.append(g);
  for (const auto& g : a.gates()) {
    Gate s = g;
    if (g.type == Gate::Type::Rotation && !g.angle.is_bound())
      s.angle = ParamRef::free(g.angle.index() + b.param_count());
    out.append(std::move(s));
  }
  return out;
}

std::string Circuit::to_json() const {
  json j;
  j["n"] = n_;
  j["initial_state"] = (init_ == InitialState::AllZero) ? "zero" : "plus";
  j["param_count"] = param_count_;
  json gs = json::array();
  for (const auto& g : gates_) {
    json e;
    if (g.type == Gate::Type::Rotation) {
      e["type"] = "rot";
      e["axis"] = g.axis.to_text();
      if (g.angle.is_bound())
        e["angle"] = {{"bound", g.angle.value()}};
      else
        e["angle"] = {{"free", g.angle.index()}};
      e["sign"] = g.sign;
    } else {
      switch (g.clifford) {
        case CliffordKind::H: e["type"] = "h"; e["q"] = {g.q0}; break;
        case CliffordKind::S: e["type"] = "s"; e["q"] = {g.q0}; break;
        case CliffordKind::Sdg: e["type"] = "sdg"; e["q"] = {g.q0}; break;
        case CliffordKind::CNOT: e["type"] = "cx"; e["q"] = {g.q0, g.q1}; break;
      }
    }
    gs.push_back(std::move(e));
  }
  j["gates"] = std::move(gs);
  return j.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
  json j = json::parse(text);
  Circuit c(j.at("n").get<int>(), j.at("initial_state").get<std::string>() == "plus"
                                      ? InitialState::AllPlus
                                      : InitialState::AllZero);
  for (const auto& e : j.at("gates")) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "rot") {
      const auto& a = e.at("angle");
      ParamRef angle = a.contains("bound") ? ParamRef::bound(a.at("bound").get<double>())
                                           : ParamRef::free(a.at("free").get<int>());
      c.append_rotation(PauliString::from_text(e.at("axis").get<std::string>()), angle,
                        e.value("sign", 1));
    } else if (type == "h") {
      c.append_clifford(CliffordKind::H, e.at("q").at(0).get<int>());
    } else if (type == "s") {
      c.append_clifford(CliffordKind::S, e.at("q").at(0).get<int>());
    } else if (type == "sdg") {
      c.append_clifford(CliffordKind::Sdg, e.at("q").at(0).get<int>());
    } else if (type == "cx") {
      c.append_cnot(e.at("q").at(0).get<int>(), e.at("q").at(1).get<int>());
    } else {
      throw std::invalid_argument("Circuit::from_json: unknown gate type " + type);
    }
  }
  if (c.param_count() != j.at("param_count").get<int>())
    throw std::invalid_argument("Circuit::from_json: param_count mismatch");
  return c;
}

}  // namespace pps
