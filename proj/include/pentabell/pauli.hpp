#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pentabell/gaussian.hpp"

namespace pentabell {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// A signed tensor product of single-qubit Pauli letters.  The scalar in
// front is kept as an exponent of i (0..3), so products never leave the
// group {+-1, +-i} x {I,X,Y,Z}^n and every operation is exact.
//
// Qubit 0 is the leftmost letter and the most significant bit of a
// computational basis index; display numbering is 1-based.
class PauliWord {
 public:
  PauliWord() = default;
  PauliWord(std::vector<Pauli> letters, uint8_t phase_exp = 0)
      : letters_(std::move(letters)), phase_exp_(phase_exp & 3u) {}

  static PauliWord identity(size_t num_qubits);
  static PauliWord from_letters(std::string_view letters, uint8_t phase_exp = 0);

  size_t num_qubits() const { return letters_.size(); }
  Pauli letter(size_t qubit) const { return letters_[qubit]; }
  const std::vector<Pauli>& letters() const { return letters_; }
  uint8_t phase_exp() const { return phase_exp_; }

  bool is_hermitian() const { return phase_exp_ % 2 == 0; }
  bool is_identity_letters() const;
  // True when every entry of to_matrix() is real: i^(phase + #Y) is +-1.
  bool has_real_matrix() const;

  // Image of a computational basis state: M|b> = i^k |b'>.
  // Returns {b', k} with k in 0..3.
  std::pair<uint64_t, uint8_t> act(uint64_t basis_index) const;

  GaussianMatrix to_matrix() const;

  // Canonical text form: phase prefix ("", "-", "i", "-i") + letters.
  std::string str() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::vector<Pauli> letters_;
  uint8_t phase_exp_ = 0;
};

// Operator product with exact phase tracking (Z*X = iY and friends, phases
// multiplied across positions).  Throws std::invalid_argument on qubit-count
// mismatch.
PauliWord multiply(const PauliWord& a, const PauliWord& b);

// True iff the number of positions whose letters anticommute is even.
bool commutes(const PauliWord& a, const PauliWord& b);

class PauliParseError : public std::runtime_error {
 public:
  PauliParseError(const std::string& message, size_t position)
      : std::runtime_error(message), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Grammar: sign? 'i'? [IXYZ]+ with sign '+' | '-'; whitespace ignored.
// Lowercase 'i' marks an imaginary phase; uppercase 'I' is the identity
// letter.  Round-trips with PauliWord::str().
PauliWord parse_pauli(std::string_view text);

}  // namespace pentabell
