#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>

namespace fockdual {

using cplx = std::complex<double>;

/// Largest supported ambient dimension (C^n with n + 1 <= kMaxDim).
inline constexpr std::size_t kMaxDim = 8;

/// Dense point of C^k with inline storage. Value type; arithmetic keeps the dimension.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim);
  ComplexVector(std::initializer_list<cplx> entries);
  explicit ComplexVector(std::span<const cplx> entries);

  std::size_t dim() const noexcept { return dim_; }
  cplx operator[](std::size_t i) const noexcept { return data_[i]; }
  cplx& operator[](std::size_t i) noexcept { return data_[i]; }
  std::span<const cplx> entries() const noexcept { return {data_.data(), dim_}; }
  std::span<cplx> entries() noexcept { return {data_.data(), dim_}; }

  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);
  ComplexVector& operator*=(cplx factor) noexcept;

  ComplexVector conj() const noexcept;

  friend bool operator==(const ComplexVector& a, const ComplexVector& b) noexcept;

 private:
  std::array<cplx, kMaxDim> data_{};
  std::size_t dim_ = 0;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(cplx factor, ComplexVector v) noexcept;
ComplexVector operator*(ComplexVector v, cplx factor) noexcept;

std::ostream& operator<<(std::ostream& os, const ComplexVector& v);

/// z . w = sum_j z_j w_j, without conjugation. Throws DimensionError.
cplx bilinear_dot(const ComplexVector& z, const ComplexVector& w);

/// <z, w> = sum_j z_j conj(w_j). Throws DimensionError.
cplx hermitian_dot(const ComplexVector& z, const ComplexVector& w);

double hermitian_norm_sq(const ComplexVector& z) noexcept;
double hermitian_norm(const ComplexVector& z) noexcept;

/// N_*(z) = sqrt(|z|^2 + |z . z|), the Hahn-Pflug norm (up to the factor sqrt 2).
double hahn_pflug(const ComplexVector& z) noexcept;

/// Principal square root with argument in (-pi/2, pi/2]; the negative real
/// axis maps to the positive imaginary axis regardless of the sign of zero.
cplx sqrt_principal(cplx zeta) noexcept;

/// Largest absolute difference between entries. Throws DimensionError.
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

}  // namespace fockdual
