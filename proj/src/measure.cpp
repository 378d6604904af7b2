#include "pps/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

namespace pps {

namespace {

char bond_letter(BondType t) {
  switch (t) {
    case BondType::X: return 'X';
    case BondType::Y: return 'Y';
    case BondType::Z: return 'Z';
    case BondType::Generic: return 'Z';
  }
  throw std::logic_error("bad bond type");
}

}  // namespace

double magnetization_z(const Engine& eng, const Circuit& circ,
                       std::span<const double> theta) {
  const int n = circ.n_qubits();
  SparseOperator m(n);
  for (int q = 0; q < n; ++q) m.add_term(PauliString::single(n, q, 'Z'), 1.0 / n);
  return eng.expectation(m, circ, theta);
}

std::vector<double> bond_expectations(const Engine& eng, const Lattice& lat,
                                      const Circuit& circ, std::span<const double> theta) {
  const int n = circ.n_qubits();
  if (n != lat.n_sites) throw std::invalid_argument("bond_expectations: size mismatch");
  std::vector<double> out(lat.bonds.size());
  for (std::size_t i = 0; i < lat.bonds.size(); ++i) {
    const Bond& b = lat.bonds[i];
    const char l = bond_letter(b.type);
    PauliString w = PauliString(n);
    w.set_letter(b.u, l);
    w.set_letter(b.v, l);
    SparseOperator obs(n);
    obs.add_term(w, 1.0);
    out[i] = eng.expectation(obs, circ, theta);
  }
  return out;
}

Eigen::MatrixXcd tomography(const Engine& eng, const Circuit& circ,
                            std::span<const double> theta, std::span<const int> region) {
  const int m = static_cast<int>(region.size());
  if (m < 1 || m > 8) throw std::invalid_argument("tomography: region size must be 1..8");
  const int n = circ.n_qubits();
  for (int q : region)
    if (q < 0 || q >= n) throw std::invalid_argument("tomography: region site out of range");

  const long words = 1L << (2 * m);  // 4^m
  const int dim = 1 << m;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const double scale = 1.0 / dim;
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  const std::complex<double> im(0.0, 1.0);

#pragma omp parallel
  {
    Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(dim, dim);
    const Engine worker(eng.options());  // private stats, same options
#pragma omp for schedule(dynamic)
    for (long idx = 0; idx < words; ++idx) {
      PauliString w = PauliString(n);
      long rest = idx;
      int x_mask = 0;
      std::array<int, 8> digit{};
      for (int k = 0; k < m; ++k) {
        digit[k] = static_cast<int>(rest & 3);
        rest >>= 2;
        w.set_letter(region[k], kLetters[digit[k]]);
        if (digit[k] == 1 || digit[k] == 2) x_mask |= 1 << k;
      }
      SparseOperator obs(n);
      obs.add_term(w, 1.0);
      const double c = worker.expectation(obs, circ, theta);
      if (c == 0.0) continue;
      for (int b = 0; b < dim; ++b) {
        std::complex<double> phase(1.0, 0.0);
        for (int k = 0; k < m; ++k) {
          const bool bit = (b >> k) & 1;
          switch (digit[k]) {
            case 2: phase *= bit ? -im : im; break;  // Y
            case 3: phase *= bit ? -1.0 : 1.0; break;  // Z
            default: break;
          }
        }
        local(b ^ x_mask, b) += scale * c * phase;
      }
    }
#pragma omp critical
    rho += local;
  }
  return rho;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int m,
                               std::span<const int> keep) {
  if (rho.rows() != (1 << m) || rho.cols() != (1 << m))
    throw std::invalid_argument("partial_trace: dimension mismatch");
  const int mk = static_cast<int>(keep.size());
  for (int i = 0; i < mk; ++i) {
    if (keep[i] < 0 || keep[i] >= m) throw std::invalid_argument("partial_trace: bad index");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be ascending");
  }
  std::vector<int> rest;
  for (int q = 0; q < m; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);

  auto expand = [](std::span<const int> positions, int bits) {
    int full = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      if ((bits >> i) & 1) full |= 1 << positions[i];
    return full;
  };

  const int dk = 1 << mk, dr = 1 << static_cast<int>(rest.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      std::complex<double> s(0.0, 0.0);
      for (int r = 0; r < dr; ++r) {
        const int rbits = expand(rest, r);
        s += rho(expand(keep, a) | rbits, expand(keep, b) | rbits);
      }
      out(a, b) = s;
    }
  return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double lam = ev[i];
    if (lam < -0.01 || lam > 1.01)
      std::cerr << "warning: density-matrix eigenvalue " << lam
                << " outside [0,1] by more than 0.01\n";
    lam = std::min(1.0, std::max(0.0, lam));
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return s;
}

TopoEntropyReport topological_entropy(const Engine& eng, const Lattice& lat,
                                      const Circuit& circ, std::span<const double> theta) {
  const int nx = lat.nx;
  // Region qubits in ascending order with their A/B/C membership positions.
  const std::vector<int> region = {0, 1, 2, nx, nx + 1, nx + 2};
  const std::vector<int> a_pos = {0, 1};      // sites 0, 1
  const std::vector<int> b_pos = {3, 4};      // sites nx, nx+1
  const std::vector<int> c_pos = {2, 5};      // sites 2, nx+2
  auto join = [](std::span<const int> u, std::span<const int> v) {
    std::vector<int> out(u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
  };

  const Eigen::MatrixXcd rho = tomography(eng, circ, theta, region);
  TopoEntropyReport rep;
  const int m = 6;
  rep.s_a = von_neumann_entropy(partial_trace(rho, m, a_pos));
  rep.s_b = von_neumann_entropy(partial_trace(rho, m, b_pos));
  rep.s_c = von_neumann_entropy(partial_trace(rho, m, c_pos));
  rep.s_ab = von_neumann_entropy(partial_trace(rho, m, join(a_pos, b_pos)));
  rep.s_ac = von_neumann_entropy(partial_trace(rho, m, join(a_pos, c_pos)));
  rep.s_bc = von_neumann_entropy(partial_trace(rho, m, join(b_pos, c_pos)));
  rep.s_abc = von_neumann_entropy(rho);
  rep.s_topo = rep.s_a + rep.s_b + rep.s_c - rep.s_ab - rep.s_ac - rep.s_bc + rep.s_abc;
  return rep;
}

}  // namespace pps
