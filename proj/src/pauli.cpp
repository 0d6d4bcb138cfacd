#include "pentabell/pauli.hpp"

#include <array>
#include <cctype>

namespace pentabell {

namespace {

struct LetterProduct {
  Pauli letter;
  uint8_t phase_exp;
};

// Single-qubit multiplication table, row * column.
// X*Y = iZ, Y*Z = iX, Z*X = iY; the reversed orders pick up -i.
constexpr LetterProduct kLetterTable[4][4] = {
    /* I */ {{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}},
    /* X */ {{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}},
    /* Y */ {{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}},
    /* Z */ {{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}},
};

}  // namespace

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<uint8_t>(p)];
}

PauliWord PauliWord::identity(size_t num_qubits) {
  return PauliWord(std::vector<Pauli>(num_qubits, Pauli::I));
}

PauliWord PauliWord::from_letters(std::string_view letters, uint8_t phase_exp) {
  std::vector<Pauli> out;
  out.reserve(letters.size());
  for (size_t i = 0; i < letters.size(); ++i) {
    switch (letters[i]) {
      case 'I': out.push_back(Pauli::I); break;
      case 'X': out.push_back(Pauli::X); break;
      case 'Y': out.push_back(Pauli::Y); break;
      case 'Z': out.push_back(Pauli::Z); break;
      default:
        throw PauliParseError(
            std::string("invalid Pauli letter '") + letters[i] + "'", i);
    }
  }
  return PauliWord(std::move(out), phase_exp);
}

bool PauliWord::is_identity_letters() const {
  for (Pauli p : letters_)
    if (p != Pauli::I) return false;
  return true;
}

bool PauliWord::has_real_matrix() const {
  size_t y_count = 0;
  for (Pauli p : letters_)
    if (p == Pauli::Y) ++y_count;
  return (phase_exp_ + y_count) % 2 == 0;
}

std::pair<uint64_t, uint8_t> PauliWord::act(uint64_t basis_index) const {
  const size_t n = letters_.size();
  uint64_t out = basis_index;
  uint8_t k = phase_exp_;
  for (size_t j = 0; j < n; ++j) {
    const uint64_t bit_mask = uint64_t{1} << (n - 1 - j);
    const bool bit = (basis_index & bit_mask) != 0;
    switch (letters_[j]) {
      case Pauli::I:
        break;
      case Pauli::X:
        out ^= bit_mask;
        break;
      case Pauli::Z:
        if (bit) k = (k + 2) & 3u;
        break;
      case Pauli::Y:
        out ^= bit_mask;
        k = (k + (bit ? 3 : 1)) & 3u;
        break;
    }
  }
  return {out, k};
}

GaussianMatrix PauliWord::to_matrix() const {
  const size_t dim = size_t{1} << letters_.size();
  GaussianMatrix m(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    auto [image, k] = act(b);
    m.at(image, b) = i_power(k);
  }
  return m;
}

std::string PauliWord::str() const {
  static constexpr const char* kPrefix[] = {"", "i", "-", "-i"};
  std::string s = kPrefix[phase_exp_];
  for (Pauli p : letters_) s += pauli_char(p);
  return s;
}

PauliWord multiply(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("PauliWord qubit-count mismatch: " +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()));
  std::vector<Pauli> letters(a.num_qubits());
  uint8_t k = (a.phase_exp() + b.phase_exp()) & 3u;
  for (size_t j = 0; j < a.num_qubits(); ++j) {
    const LetterProduct p = kLetterTable[static_cast<uint8_t>(a.letter(j))]
                                        [static_cast<uint8_t>(b.letter(j))];
    letters[j] = p.letter;
    k = (k + p.phase_exp) & 3u;
  }
  return PauliWord(std::move(letters), k);
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("PauliWord qubit-count mismatch: " +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()));
  size_t anticommuting = 0;
  for (size_t j = 0; j < a.num_qubits(); ++j) {
    const Pauli pa = a.letter(j);
    const Pauli pb = b.letter(j);
    if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

PauliWord parse_pauli(std::string_view text) {
  size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_ws();
  uint8_t phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
    skip_ws();
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3u;
    ++pos;
    skip_ws();
  }

  std::vector<Pauli> letters;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    switch (c) {
      case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw PauliParseError(std::string("invalid Pauli letter '") + c +
                                  "' at position " + std::to_string(pos),
                              pos);
    }
    ++pos;
  }
  if (letters.empty())
    throw PauliParseError("empty Pauli word", pos);
  return PauliWord(std::move(letters), phase);
}

}  // namespace pentabell
