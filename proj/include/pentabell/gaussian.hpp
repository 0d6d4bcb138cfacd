#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pentabell {

// Complex number with integer real and imaginary parts.  Everything the
// eigenspace machinery needs stays inside this ring, so equality checks are
// exact.
struct GaussianInt {
  int64_t re = 0;
  int64_t im = 0;

  constexpr GaussianInt conj() const { return {re, -im}; }
  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr bool is_real() const { return im == 0; }

  friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend constexpr GaussianInt operator-(GaussianInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussianInt operator*(GaussianInt a, GaussianInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussianInt a, GaussianInt b) {
    return a.re == b.re && a.im == b.im;
  }
};

// i^k for k in 0..3.
constexpr GaussianInt i_power(uint8_t k) {
  switch (k & 3u) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::string to_string(GaussianInt v);

// Dense square matrix over the Gaussian integers.  Dimensions here are at
// most 64, so the naive kernels are plenty.
class GaussianMatrix {
 public:
  explicit GaussianMatrix(size_t dim) : dim_(dim), data_(dim * dim) {}

  static GaussianMatrix identity(size_t dim, int64_t scale = 1) {
    GaussianMatrix m(dim);
    for (size_t i = 0; i < dim; ++i) m.at(i, i) = {scale, 0};
    return m;
  }

  size_t dim() const { return dim_; }

  GaussianInt& at(size_t r, size_t c) { return data_[r * dim_ + c]; }
  const GaussianInt& at(size_t r, size_t c) const { return data_[r * dim_ + c]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!v.is_zero()) return false;
    return true;
  }

  bool is_hermitian() const {
    for (size_t r = 0; r < dim_; ++r)
      for (size_t c = 0; c < dim_; ++c)
        if (!(at(r, c) == at(c, r).conj())) return false;
    return true;
  }

  bool is_real() const {
    for (const auto& v : data_)
      if (v.im != 0) return false;
    return true;
  }

  GaussianInt trace() const {
    GaussianInt t;
    for (size_t i = 0; i < dim_; ++i) t = t + at(i, i);
    return t;
  }

  GaussianMatrix scaled(GaussianInt s) const {
    GaussianMatrix m(dim_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
  }

  friend GaussianMatrix operator+(const GaussianMatrix& a, const GaussianMatrix& b) {
    require_same_dim(a, b);
    GaussianMatrix m(a.dim_);
    for (size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
    return m;
  }

  friend GaussianMatrix operator-(const GaussianMatrix& a, const GaussianMatrix& b) {
    require_same_dim(a, b);
    GaussianMatrix m(a.dim_);
    for (size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
    return m;
  }

  friend GaussianMatrix operator*(const GaussianMatrix& a, const GaussianMatrix& b) {
    require_same_dim(a, b);
    GaussianMatrix m(a.dim_);
    for (size_t r = 0; r < a.dim_; ++r) {
      for (size_t k = 0; k < a.dim_; ++k) {
        const GaussianInt arc = a.at(r, k);
        if (arc.is_zero()) continue;
        for (size_t c = 0; c < a.dim_; ++c) {
          m.at(r, c) = m.at(r, c) + arc * b.at(k, c);
        }
      }
    }
    return m;
  }

  friend bool operator==(const GaussianMatrix& a, const GaussianMatrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  static void require_same_dim(const GaussianMatrix& a, const GaussianMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  }

  size_t dim_;
  std::vector<GaussianInt> data_;
};

}  // namespace pentabell
