#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pentabell {

// Exact nonnegative rational on int64.  Every probability in the simulation
// is dyadic and tiny, so this never strains the representation.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational zero() { return {}; }
  static Rational one() { return {1, 1}; }

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == den; }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace pentabell
