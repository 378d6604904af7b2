#pragma once

// Random-instance generators shared by the unit and acceptance tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "pps/circuit.hpp"
#include "pps/pauli.hpp"
#include "pps/sparse_op.hpp"

namespace testutil {

inline pps::PauliString random_word(std::mt19937_64& rng, int n, int max_weight) {
  max_weight = std::min(max_weight, n);
  std::uniform_int_distribution<int> wd(1, max_weight);
  std::uniform_int_distribution<int> ld(0, 2);
  constexpr char kLetters[3] = {'X', 'Y', 'Z'};
  pps::PauliString p(n);
  std::vector<int> qs(static_cast<std::size_t>(n));
  std::iota(qs.begin(), qs.end(), 0);
  std::shuffle(qs.begin(), qs.end(), rng);
  const int w = wd(rng);
  for (int i = 0; i < w; ++i) p.set_letter(qs[static_cast<std::size_t>(i)], kLetters[ld(rng)]);
  return p;
}

/// Mixed rotation/Clifford circuit with bound rotation angles.
inline pps::Circuit random_circuit(std::mt19937_64& rng, int n, int n_gates,
                                   pps::InitialState init) {
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> qd(0, n - 1);
  pps::Circuit c(n, init);
  for (int i = 0; i < n_gates; ++i) {
    const int k = kind(rng);
    if (k < 5) {
      c.append_rotation(random_word(rng, n, 3), pps::ParamRef::bound(ang(rng)));
    } else if (k == 5) {
      c.append_clifford(pps::CliffordKind::H, qd(rng));
    } else if (k == 6) {
      c.append_clifford(pps::CliffordKind::S, qd(rng));
    } else if (k == 7) {
      c.append_clifford(pps::CliffordKind::Sdg, qd(rng));
    } else if (n >= 2) {
      int a = qd(rng), b = qd(rng);
      while (b == a) b = qd(rng);
      c.append_cnot(a, b);
    } else {
      c.append_clifford(pps::CliffordKind::H, 0);
    }
  }
  return c;
}

inline pps::SparseOperator random_observable(std::mt19937_64& rng, int n, int n_terms,
                                             int max_weight) {
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  pps::SparseOperator op(n);
  while (static_cast<int>(op.size()) < n_terms) {
    double c = cd(rng);
    if (c == 0.0) c = 0.5;
    op.add_term(random_word(rng, n, max_weight), c);
  }
  return op;
}

}  // namespace testutil
