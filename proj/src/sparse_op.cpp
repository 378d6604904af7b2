#include "pps/sparse_op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace pps {

void SparseOperator::add_term(const PauliString& word, double coeff) {
  if (word.n_qubits() != n_)
    throw std::invalid_argument("SparseOperator::add_term: dimension mismatch");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double SparseOperator::coeff(const PauliString& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? 0.0 : it->second;
}

std::vector<PauliTerm> SparseOperator::sorted_terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.push_back({w, c});
  std::sort(out.begin(), out.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.word < b.word; });
  return out;
}

SparseOperator SparseOperator::truncated(double delta_c) const {
  if (delta_c < 0.0) throw std::invalid_argument("truncated: delta_c must be >= 0");
  SparseOperator out(n_);
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_)
    if (std::abs(c) > delta_c) out.terms_.emplace(w, c);
  return out;
}

double SparseOperator::l2_norm_sq() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += c * c;
  return s;
}

double SparseOperator::l1_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::abs(c);
  return s;
}

double SparseOperator::expectation_all_zero() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_)
    if ((w.x_word(0) | w.x_word(1)) == 0) s += c;
  return s;
}

double SparseOperator::expectation_all_plus() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_)
    if ((w.z_word(0) | w.z_word(1)) == 0) s += c;
  return s;
}

void SparseOperator::dump(std::ostream& os) const {
  char buf[64];
  for (const auto& t : sorted_terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coeff);
    os << buf << ' ' << t.word.to_text() << '\n';
  }
}

SparseOperator SparseOperator::parse(std::istream& is, int n) {
  SparseOperator out(n);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double c;
    std::string word;
    if (!(ls >> c >> word))
      throw std::invalid_argument("SparseOperator::parse: malformed line: " + line);
    if (static_cast<int>(word.size()) != n)
      throw std::invalid_argument("SparseOperator::parse: word length != n");
    out.add_term(PauliString::from_text(word), c);
  }
  return out;
}

}  // namespace pps
