#include "pps/pauli.hpp"

#include <bit>

namespace pps {

namespace {

inline int popcount2(uint64_t a, uint64_t b) {
  return std::popcount(a) + std::popcount(b);
}

}  // namespace

PauliString PauliString::from_text(const std::string& text) {
  PauliString p(static_cast<int>(text.size()));
  for (int q = 0; q < static_cast<int>(text.size()); ++q) p.set_letter(q, text[q]);
  return p;
}

PauliString PauliString::single(int n, int q, char letter) {
  PauliString p(n);
  p.set_letter(q, letter);
  return p;
}

char PauliString::letter(int q) const {
  if (q < 0 || q >= n_) throw std::invalid_argument("PauliString::letter: qubit out of range");
  const int w = q >> 6;
  const uint64_t bit = uint64_t{1} << (q & 63);
  const bool x = x_[w] & bit, z = z_[w] & bit;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliString::set_letter(int q, char letter) {
  if (q < 0 || q >= n_) throw std::invalid_argument("PauliString::set_letter: qubit out of range");
  const int w = q >> 6;
  const uint64_t bit = uint64_t{1} << (q & 63);
  x_[w] &= ~bit;
  z_[w] &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x_[w] |= bit; break;
    case 'Y': x_[w] |= bit; z_[w] |= bit; break;
    case 'Z': z_[w] |= bit; break;
    default: throw std::invalid_argument("PauliString: letter must be one of IXYZ");
  }
}

int PauliString::weight() const {
  return popcount2(x_[0] | z_[0], x_[1] | z_[1]);
}

std::string PauliString::to_text() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

std::size_t PauliString::hash() const {
  // splitmix64-style mixing over the four mask words plus n.
  auto mix = [](uint64_t h, uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    v ^= v >> 31;
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  };
  uint64_t h = static_cast<uint64_t>(n_);
  h = mix(h, x_[0]);
  h = mix(h, x_[1]);
  h = mix(h, z_[0]);
  h = mix(h, z_[1]);
  return static_cast<std::size_t>(h);
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits())
    throw std::invalid_argument("commutes: dimension mismatch");
  int c = 0;
  for (int w = 0; w < kMaskWords; ++w)
    c += popcount2(p.x_word(w) & q.z_word(w), p.z_word(w) & q.x_word(w));
  return (c & 1) == 0;
}

std::pair<int, PauliString> multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits())
    throw std::invalid_argument("multiply: dimension mismatch");
  PauliString r(p.n_qubits());
  // With the convention P(x,z) = i^{x.z} X^x Z^z per site,
  //   P(x1,z1) P(x2,z2) = i^{x1.z1 + x2.z2 + 2 z1.x2 - x3.z3} P(x3,z3).
  int k = 0;
  for (int w = 0; w < kMaskWords; ++w) {
    const uint64_t x1 = p.x_word(w), z1 = p.z_word(w);
    const uint64_t x2 = q.x_word(w), z2 = q.z_word(w);
    const uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
    k += std::popcount(x1 & z1) + std::popcount(x2 & z2) + 2 * std::popcount(z1 & x2) -
         std::popcount(x3 & z3);
    r.x_word(w) = x3;
    r.z_word(w) = z3;
  }
  return {((k % 4) + 4) % 4, r};
}

}  // namespace pps
