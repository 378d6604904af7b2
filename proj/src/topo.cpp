#include "pps/topo.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pps {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

void require_honeycomb(const Lattice& lat) {
  if (lat.kind != LatticeKind::HoneycombSquarePBC)
    throw std::invalid_argument("honeycomb (square-mapped) lattice required");
}

int phys_site(const Lattice& lat, int r, int c) {
  return mod(r, lat.ny) * lat.nx + mod(c, lat.nx);
}

PauliString word_at(const Lattice& lat, std::initializer_list<std::tuple<int, int, char>> letters) {
  PauliString w = PauliString(lat.n_sites);
  for (const auto& [r, c, l] : letters) w.set_letter(phys_site(lat, r, c), l);
  return w;
}

/// The six bond operators around a hexagon, walked top edge left-to-right and
/// then back along the bottom edge: XX(t0,t1), YY(t1,t2), ZZ(t2,b2),
/// XX(b1,b2), YY(b0,b1), ZZ(t0,b0).
std::vector<PauliString> hexagon_bond_factors(const Lattice& lat, Face f) {
  const auto s = face_sites(lat, f);
  auto bond = [&](int a, int b, char l) {
    PauliString w = PauliString(lat.n_sites);
    w.set_letter(a, l);
    w.set_letter(b, l);
    return w;
  };
  return {bond(s[0], s[1], 'X'), bond(s[1], s[2], 'Y'), bond(s[2], s[5], 'Z'),
          bond(s[4], s[5], 'X'), bond(s[3], s[4], 'Y'), bond(s[0], s[3], 'Z')};
}

}  // namespace

EffectiveLayout EffectiveLayout::build(const Lattice& lat) {
  require_honeycomb(lat);
  EffectiveLayout lay;
  lay.nx = lat.nx;
  lay.ny = lat.ny;
  lay.n_phys = lat.n_sites;
  lay.n_eff = lat.n_sites / 2;
  lay.top.resize(lay.n_eff);
  lay.bottom.resize(lay.n_eff);
  lay.row.resize(lay.n_eff);
  lay.col.resize(lay.n_eff);
  for (int r = 0; r < lay.ny; ++r)
    for (int c = r % 2; c < lay.nx; c += 2) {
      const int e = r * (lay.nx / 2) + (c - r % 2) / 2;
      lay.top[e] = r * lay.nx + c;
      lay.bottom[e] = mod(r + 1, lay.ny) * lay.nx + c;
      lay.row[e] = r;
      lay.col[e] = c;
    }
  return lay;
}

int EffectiveLayout::eff_at(int r, int c) const {
  const int rr = mod(r, ny), cc = mod(c, nx);
  if ((rr + cc) % 2 != 0)
    throw std::invalid_argument("eff_at: no effective qubit at odd-parity position");
  return rr * (nx / 2) + (cc - rr % 2) / 2;
}

void append_eff_s(Circuit& c, const EffectiveLayout& lay, int e) {
  c.append_clifford(CliffordKind::S, lay.top.at(e));
}

void append_eff_sdg(Circuit& c, const EffectiveLayout& lay, int e) {
  c.append_clifford(CliffordKind::Sdg, lay.top.at(e));
}

void append_eff_h(Circuit& c, const EffectiveLayout& lay, int e) {
  c.append_cnot(lay.top.at(e), lay.bottom.at(e));
  c.append_clifford(CliffordKind::H, lay.top.at(e));
  c.append_cnot(lay.top.at(e), lay.bottom.at(e));
}

void append_eff_cnot(Circuit& c, const EffectiveLayout& lay, int ec, int et) {
  c.append_cnot(lay.top.at(ec), lay.top.at(et));
  c.append_cnot(lay.top.at(ec), lay.bottom.at(et));
}

Circuit flux_free_circuit(const Lattice& lat) {
  require_honeycomb(lat);
  if (lat.nx < 4 || lat.ny < 4)
    throw std::invalid_argument("flux_free_circuit: need nx, ny >= 4");
  const EffectiveLayout lay = EffectiveLayout::build(lat);
  Circuit circ(lat.n_sites, InitialState::AllZero);

  // Toric sweep: even-row faces become X-type checks. Each face entangles one
  // fresh |0> qubit (H then CNOT fan-out) that no earlier face has touched:
  // the face's down neighbor row by row, switching to the right neighbor in
  // the final row, where the last face is implied by the product of the rest.
  for (int r = 0; r + 2 <= lat.ny; r += 2) {
    const bool last_row = (r == lat.ny - 2);
    for (int c = 0; c + 2 <= lat.nx; c += 2) {
      int fresh;
      std::array<int, 3> targets;
      if (!last_row) {
        fresh = lay.eff_at(r + 1, c + 1);
        targets = {lay.eff_at(r, c), lay.eff_at(r - 1, c + 1), lay.eff_at(r, c + 2)};
      } else {
        if (c == lat.nx - 2) continue;
        fresh = lay.eff_at(r, c + 2);
        targets = {lay.eff_at(r, c), lay.eff_at(r - 1, c + 1), lay.eff_at(r + 1, c + 1)};
      }
      append_eff_h(circ, lay, fresh);
      for (int t : targets) append_eff_cnot(circ, lay, fresh, t);
    }
  }

  // Basis rotation from toric checks back to the physical hexagons.
  for (int e = 0; e < lay.n_eff; ++e)
    if (lay.row[e] % 2 == 1) append_eff_h(circ, lay, e);
  for (int e = 0; e < lay.n_eff; ++e) append_eff_s(circ, lay, e);
  return circ;
}

BraidSpec make_braid_spec(const std::string& kind, const Lattice& lat) {
  require_honeycomb(lat);
  if (lat.nx < 4 || lat.ny < 4)
    throw std::invalid_argument("make_braid_spec: need nx, ny >= 4");
  BraidSpec spec;
  spec.kind = kind;
  if (kind == "em") {
    if (lat.nx == 8 && lat.ny == 6) {
      // Dressed pair-creation strings keeping the anyons clear of the loop.
      spec.creation = {word_at(lat, {{1, 2, 'Z'}, {1, 4, 'Z'}, {1, 5, 'Y'}, {2, 5, 'X'}}),
                       word_at(lat, {{2, 2, 'Y'}, {3, 2, 'X'}, {4, 1, 'Z'}, {4, 3, 'Z'}})};
    } else {
      spec.creation = {word_at(lat, {{1, 2, 'Z'}}), word_at(lat, {{2, 1, 'Z'}})};
    }
    spec.braid_factors = {word_at(lat, {{0, 2, 'Z'}}), word_at(lat, {{1, 1, 'X'}}),
                          word_at(lat, {{1, 3, 'Y'}}), word_at(lat, {{2, 1, 'Y'}}),
                          word_at(lat, {{2, 2, 'Z'}}), word_at(lat, {{2, 3, 'X'}})};
  } else if (kind == "epsi") {
    spec.creation = {word_at(lat, {{2, 4, 'Z'}}),
                     word_at(lat, {{2, 1, 'Y'}, {2, 2, 'Y'}})};
    spec.braid_factors = hexagon_bond_factors(lat, Face{2, 2});
  } else if (kind == "mpsi") {
    spec.creation = {word_at(lat, {{2, 1, 'Z'}}),
                     word_at(lat, {{2, 2, 'Z'}, {3, 2, 'Z'}})};
    spec.braid_factors = hexagon_bond_factors(lat, Face{1, 1});
  } else {
    throw std::invalid_argument("make_braid_spec: kind must be em, epsi or mpsi");
  }
  return spec;
}

std::pair<std::complex<double>, PauliString> braid_word(const BraidSpec& spec) {
  if (spec.braid_factors.empty()) throw std::invalid_argument("empty braid");
  const int n = spec.braid_factors.front().n_qubits();
  PauliString word = PauliString(n);
  int k = 0;
  for (const PauliString& f : spec.braid_factors) {
    auto [dk, next] = multiply(f, word);
    k = (k + dk) % 4;
    word = next;
  }
  static const std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPhases[k], word};
}

std::complex<double> braiding_phase(const BraidSpec& spec, const Circuit& circ,
                                    std::span<const double> theta, const Engine& engine) {
  const auto [phase, word] = braid_word(spec);
  double sign = 1.0;
  for (const PauliString& c : spec.creation)
    if (!commutes(word, c)) sign = -sign;
  SparseOperator obs(circ.n_qubits());
  obs.add_term(word, 1.0);
  return phase * sign * engine.expectation(obs, circ, theta);
}

namespace {

PauliString widen(const PauliString& p, int n_new) {
  PauliString w(n_new);
  for (int i = 0; i < kMaskWords; ++i) {
    w.x_word(i) = p.x_word(i);
    w.z_word(i) = p.z_word(i);
  }
  return w;
}

}  // namespace

Circuit controlled_braid_circuit(const BraidSpec& spec, const Circuit& prep,
                                 std::span<const double> theta, AncillaBasis basis) {
  const int n = prep.n_qubits();
  if (n + 1 > kMaxQubits) throw std::invalid_argument("no room for the ancilla");
  const int a = n;
  Circuit out(n + 1, prep.initial_state());

  const Circuit bound = prep.bind(theta);
  for (const Gate& g : bound.gates()) {
    if (g.type == Gate::Type::Rotation)
      out.append(Gate::rotation(widen(g.axis, n + 1), g.angle, g.sign));
    else
      out.append(g.clifford == CliffordKind::CNOT
                     ? Gate::cnot(g.q0, g.q1)
                     : Gate::clifford1(g.clifford, g.q0));
  }

  for (const PauliString& c : spec.creation)
    out.append_rotation(widen(c, n + 1), ParamRef::bound(M_PI));

  out.append_clifford(CliffordKind::H, a);

  const auto [phase, word] = braid_word(spec);
  for (int q = 0; q < n; ++q) {
    switch (word.letter(q)) {
      case 'I': break;
      case 'X':
        out.append_cnot(a, q);
        break;
      case 'Y':
        out.append_clifford(CliffordKind::Sdg, q);
        out.append_cnot(a, q);
        out.append_clifford(CliffordKind::S, q);
        break;
      case 'Z':
        out.append_clifford(CliffordKind::H, q);
        out.append_cnot(a, q);
        out.append_clifford(CliffordKind::H, q);
        break;
    }
  }
  const int k = mod(static_cast<int>(std::llround(std::arg(phase) / (M_PI / 2))), 4);
  for (int i = 0; i < k; ++i) out.append_clifford(CliffordKind::S, a);

  if (basis == AncillaBasis::X) {
    out.append_clifford(CliffordKind::H, a);
  } else {
    out.append_clifford(CliffordKind::Sdg, a);
    out.append_clifford(CliffordKind::H, a);
  }
  return out;
}

void save_braid_spec(const BraidSpec& spec, const std::string& path) {
  nlohmann::json j;
  j["kind"] = spec.kind;
  j["n"] = spec.creation.empty() ? 0 : spec.creation.front().n_qubits();
  for (const auto& w : spec.creation) j["creation"].push_back(w.to_text());
  for (const auto& w : spec.braid_factors) j["braid_factors"].push_back(w.to_text());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_braid_spec: cannot open " + path);
  out << j.dump(2) << "\n";
}

BraidSpec load_braid_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_braid_spec: cannot open " + path);
  nlohmann::json j;
  in >> j;
  BraidSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  for (const auto& t : j.at("creation"))
    spec.creation.push_back(PauliString::from_text(t.get<std::string>()));
  for (const auto& t : j.at("braid_factors"))
    spec.braid_factors.push_back(PauliString::from_text(t.get<std::string>()));
  return spec;
}

}  // namespace pps
