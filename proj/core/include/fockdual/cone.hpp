#pragma once

#include "fockdual/complex_vector.hpp"

namespace fockdual {

/// Relative tolerance for cone membership: |v . v| <= kConeTolerance * |v|^2.
inline constexpr double kConeTolerance = 1e-12;

/// |v . v| / |v|^2; infinite for the zero vector.
double cone_residual(const ComplexVector& v) noexcept;

/// Point of the null cone H = {v in C^{n+1} : v . v = 0, v != 0}.
class ConePoint {
 public:
  /// Validates membership; throws DomainError on the origin or off-cone input.
  explicit ConePoint(const ComplexVector& v, double tolerance = kConeTolerance);

  /// Skips validation. For points produced by cone-preserving constructions.
  static ConePoint trusted(const ComplexVector& v) noexcept { return ConePoint(v, Trusted{}); }

  const ComplexVector& vec() const noexcept { return vec_; }
  std::size_t dim() const noexcept { return vec_.dim(); }
  /// n, the dimension of the base space C^n.
  std::size_t base_dim() const noexcept { return vec_.dim() - 1; }
  cplx operator[](std::size_t i) const noexcept { return vec_[i]; }
  cplx last() const noexcept { return vec_[vec_.dim() - 1]; }
  double norm() const noexcept { return hermitian_norm(vec_); }

  /// r * v stays on the cone for r > 0 (the cone is invariant under C^*).
  ConePoint scaled(cplx factor) const;

  friend bool operator==(const ConePoint& a, const ConePoint& b) noexcept { return a.vec_ == b.vec_; }

 private:
  struct Trusted {};
  ConePoint(const ComplexVector& v, Trusted) noexcept : vec_(v) {}
  ComplexVector vec_;
};

/// phi(z) = (z, i sqrt(z . z)). Throws DomainError for z = 0.
ConePoint lift_plus(const ComplexVector& z);
/// (z, -i sqrt(z . z)). Throws DomainError for z = 0.
ConePoint lift_minus(const ComplexVector& z);
/// Negates the last coordinate.
ConePoint flip(const ConePoint& w) noexcept;
/// Drops the last coordinate: the 2-to-1 branched cover H -> C^n \ {0}.
ComplexVector project(const ConePoint& w);

/// True when |z . z| <= tolerance * |z|^2, i.e. z lies on the branch locus of the cover.
bool on_branch_locus(const ComplexVector& z, double tolerance = kConeTolerance) noexcept;

}  // namespace fockdual
