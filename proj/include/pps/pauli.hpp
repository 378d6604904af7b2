#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace pps {

/// Hard cap on qubit count. Two 64-bit mask words cover every lattice in the
/// toolchain (largest is the 127-site heavy-hex graph plus one ancilla).
inline constexpr int kMaxQubits = 128;
inline constexpr int kMaskWords = 2;

/// An n-qubit Pauli word stored as a pair of bit masks.
/// Bit j of x/z selects the letter on qubit j: (x,z) = (0,0) I, (1,0) X,
/// (1,1) Y, (0,1) Z. Coefficients live outside this class (see PauliTerm);
/// a PauliString is always the +1 Hermitian word.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n) : n_(check_n(n)) {}

  /// Parse "IXYZ..." text, qubit 0 leftmost.
  static PauliString from_text(const std::string& text);

  /// Single-letter word, e.g. X on qubit q of an n-qubit register.
  static PauliString single(int n, int q, char letter);

  int n_qubits() const { return n_; }

  char letter(int q) const;
  void set_letter(int q, char letter);

  bool identity() const { return (x_[0] | x_[1] | z_[0] | z_[1]) == 0; }
  /// Number of non-identity sites.
  int weight() const;

  uint64_t x_word(int w) const { return x_[w]; }
  uint64_t z_word(int w) const { return z_[w]; }
  uint64_t& x_word(int w) { return x_[w]; }
  uint64_t& z_word(int w) { return z_[w]; }

  bool x_bit(int q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z_bit(int q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }
  void set_x_bit(int q, bool b) {
    const uint64_t m = uint64_t{1} << (q & 63);
    x_[q >> 6] = b ? (x_[q >> 6] | m) : (x_[q >> 6] & ~m);
  }
  void set_z_bit(int q, bool b) {
    const uint64_t m = uint64_t{1} << (q & 63);
    z_[q >> 6] = b ? (z_[q >> 6] | m) : (z_[q >> 6] & ~m);
  }

  std::string to_text() const;

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  /// Canonical order: lexicographic on (z_mask, x_mask), high word first.
  bool operator<(const PauliString& o) const {
    if (z_[1] != o.z_[1]) return z_[1] < o.z_[1];
    if (z_[0] != o.z_[0]) return z_[0] < o.z_[0];
    if (x_[1] != o.x_[1]) return x_[1] < o.x_[1];
    return x_[0] < o.x_[0];
  }

  std::size_t hash() const;

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("PauliString: qubit count out of range");
    return n;
  }
  int n_ = 0;
  std::array<uint64_t, kMaskWords> x_{{0, 0}};
  std::array<uint64_t, kMaskWords> z_{{0, 0}};
};

struct PauliHash {
  std::size_t operator()(const PauliString& p) const { return p.hash(); }
};

/// One term of a sparse operator: real coefficient times a Pauli word.
struct PauliTerm {
  PauliString word;
  double coeff = 0.0;
};

/// True iff p and q commute: popcount(p.x & q.z) + popcount(p.z & q.x) even.
bool commutes(const PauliString& p, const PauliString& q);

/// Product p*q = i^k * r with k in {0,1,2,3}. Returns (k, r).
std::pair<int, PauliString> multiply(const PauliString& p, const PauliString& q);

}  // namespace pps
