#pragma once

#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "pps/pauli.hpp"

namespace pps {

/// Sparse Hermitian operator: a map from Pauli words to real coefficients.
/// Insertions merge by key and erase exact-zero results, so the invariant
/// "no stored zero coefficients" holds at all times.
class SparseOperator {
 public:
  using TermMap = std::unordered_map<PauliString, double, PauliHash>;

  SparseOperator() = default;
  explicit SparseOperator(int n) : n_(n) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("SparseOperator: qubit count out of range");
  }
  SparseOperator(int n, const std::vector<PauliTerm>& terms) : SparseOperator(n) {
    for (const auto& t : terms) add_term(t.word, t.coeff);
  }

  int n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add_term(const PauliString& word, double coeff);
  double coeff(const PauliString& word) const;
  void reserve(std::size_t k) { terms_.reserve(k); }

  const TermMap& terms() const { return terms_; }
  /// Raw map access for evolution kernels; callers must preserve the
  /// no-stored-zero invariant (or truncate afterwards).
  TermMap& mutable_terms() { return terms_; }

  /// Terms in canonical order (lexicographic on (z_mask, x_mask)).
  std::vector<PauliTerm> sorted_terms() const;

  /// Copy retaining strictly |coeff| > delta_c.
  SparseOperator truncated(double delta_c) const;

  double l2_norm_sq() const;
  double l1_norm() const;

  /// <0...0| O |0...0>: sum of coefficients of terms with empty x mask.
  double expectation_all_zero() const;
  /// <+...+| O |+...+>: sum of coefficients of terms with empty z mask.
  double expectation_all_plus() const;

  /// One `<coeff> <word>` line per term, canonical order, 17 significant digits.
  void dump(std::ostream& os) const;
  static SparseOperator parse(std::istream& is, int n);

  bool operator==(const SparseOperator& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  int n_ = 0;
  TermMap terms_;
};

}  // namespace pps
