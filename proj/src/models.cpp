#include "pps/models.hpp"

#include <stdexcept>

#include "pps/topo.hpp"

namespace pps {

namespace {

PauliString two_site(int n, int u, char lu, int v, char lv) {
  PauliString p = PauliString(n);
  p.set_letter(u, lu);
  p.set_letter(v, lv);
  return p;
}

char bond_letter(BondType t) {
  switch (t) {
    case BondType::X: return 'X';
    case BondType::Y: return 'Y';
    case BondType::Z: return 'Z';
    default: throw std::invalid_argument("bond has no Pauli type");
  }
}

}  // namespace

SparseOperator ising_chain_hamiltonian(int n, double gx, double gz) {
  return ising_hamiltonian(chain_pbc(n), gx, gz);
}

SparseOperator ising_hamiltonian(const Lattice& lat, double gx, double gz) {
  const int n = lat.n_sites;
  SparseOperator h(n);
  for (const Bond& b : lat.bonds) h.add_term(two_site(n, b.u, 'Z', b.v, 'Z'), -1.0);
  for (int q = 0; q < n; ++q) {
    if (gx != 0.0) h.add_term(PauliString::single(n, q, 'X'), -gx);
    if (gz != 0.0) h.add_term(PauliString::single(n, q, 'Z'), -gz);
  }
  return h;
}

SparseOperator kitaev_hamiltonian(const Lattice& lat, double jx, double jy, double jz) {
  const int n = lat.n_sites;
  SparseOperator h(n);
  for (const Bond& b : lat.bonds) {
    const char l = bond_letter(b.type);
    const double j = (b.type == BondType::X) ? jx : (b.type == BondType::Y) ? jy : jz;
    h.add_term(two_site(n, b.u, l, b.v, l), -j);
  }
  return h;
}

SparseOperator ising_chain_proxy(int n, double gx, double gz) {
  SparseOperator h(n);
  h.add_term(two_site(n, 0, 'Z', 1, 'Z'), -static_cast<double>(n));
  if (gx != 0.0) h.add_term(PauliString::single(n, 0, 'X'), -gx * n);
  if (gz != 0.0) h.add_term(PauliString::single(n, 0, 'Z'), -gz * n);
  return h;
}

SparseOperator ising_square_proxy(int nx, int ny, double gx) {
  const int n = nx * ny;
  SparseOperator h(n);
  h.add_term(two_site(n, 0, 'Z', 1, 'Z'), -static_cast<double>(n));
  h.add_term(two_site(n, 0, 'Z', nx, 'Z'), -static_cast<double>(n));
  if (gx != 0.0) h.add_term(PauliString::single(n, 1, 'X'), -gx * n);
  return h;
}

SparseOperator kitaev_proxy(int nx, int ny, double jx, double jy, double jz) {
  const int n = nx * ny;
  const double m = n / 2.0;  // bonds per type
  SparseOperator h(n);
  h.add_term(two_site(n, 0, 'X', 1, 'X'), -jx * m);
  h.add_term(two_site(n, nx, 'Y', nx + 1, 'Y'), -jy * m);
  h.add_term(two_site(n, 2, 'Z', nx + 2, 'Z'), -jz * m);
  return h;
}

Circuit ising_ansatz(const Lattice& lat, int reps) {
  if (reps < 1) throw std::invalid_argument("ising_ansatz: reps >= 1");
  const int n = lat.n_sites;
  Circuit c(n, InitialState::AllPlus);
  for (int rep = 0; rep < reps; ++rep) {
    const int g = 3 * rep, b = 3 * rep + 1, a = 3 * rep + 2;
    for (const Bond& bd : lat.bonds)
      c.append_rotation(two_site(n, bd.u, 'Z', bd.v, 'Z'), ParamRef::free(g));
    for (int q = 0; q < n; ++q)
      c.append_rotation(PauliString::single(n, q, 'X'), ParamRef::free(b));
    for (int q = 0; q < n; ++q)
      c.append_rotation(PauliString::single(n, q, 'Z'), ParamRef::free(a));
  }
  return c;
}

Circuit kitaev_ansatz(const Lattice& lat, int reps) {
  if (reps < 1) throw std::invalid_argument("kitaev_ansatz: reps >= 1");
  if (lat.kind != LatticeKind::HoneycombSquarePBC)
    throw std::invalid_argument("kitaev_ansatz: honeycomb lattice required");
  const int n = lat.n_sites;
  Circuit layers(n, InitialState::AllZero);
  auto bonds_of = [&](BondType t) {
    std::vector<Bond> out;
    for (const Bond& b : lat.bonds)
      if (b.type == t) out.push_back(b);
    return out;
  };
  const auto xb = bonds_of(BondType::X), yb = bonds_of(BondType::Y), zb = bonds_of(BondType::Z);
  for (int rep = 0; rep < reps; ++rep) {
    const int g = 3 * rep, b = 3 * rep + 1, a = 3 * rep + 2;
    for (const Bond& bd : xb)
      layers.append_rotation(two_site(n, bd.u, 'X', bd.v, 'X'), ParamRef::free(g));
    for (const Bond& bd : yb)
      layers.append_rotation(two_site(n, bd.u, 'Y', bd.v, 'Y'), ParamRef::free(b));
    for (const Bond& bd : zb)
      layers.append_rotation(two_site(n, bd.u, 'Z', bd.v, 'Z'), ParamRef::free(a));
  }
  return compose(layers, flux_free_circuit(lat));
}

}  // namespace pps
