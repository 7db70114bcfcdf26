#include "fockdual/complex_vector.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "fockdual/errors.hpp"

namespace fockdual {
namespace {

void require_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw DimensionError("vector dimension " + std::to_string(dim) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
}

void require_same(const ComplexVector& a, const ComplexVector& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexVector::ComplexVector(std::initializer_list<cplx> entries) : dim_(entries.size()) {
  require_dim(dim_);
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexVector::ComplexVector(std::span<const cplx> entries) : dim_(entries.size()) {
  require_dim(dim_);
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  require_same(*this, other, "add");
  for (std::size_t i = 0; i < dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  require_same(*this, other, "subtract");
  for (std::size_t i = 0; i < dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(cplx factor) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) data_[i] *= factor;
  return *this;
}

ComplexVector ComplexVector::conj() const noexcept {
  ComplexVector out = *this;
  for (std::size_t i = 0; i < dim_; ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

bool operator==(const ComplexVector& a, const ComplexVector& b) noexcept {
  return a.dim_ == b.dim_ && std::equal(a.data_.begin(), a.data_.begin() + a.dim_, b.data_.begin());
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(cplx factor, ComplexVector v) noexcept { return v *= factor; }
ComplexVector operator*(ComplexVector v, cplx factor) noexcept { return v *= factor; }

std::ostream& operator<<(std::ostream& os, const ComplexVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << v[i].real() << (v[i].imag() < 0 ? "-" : "+") << std::abs(v[i].imag()) << 'i';
  }
  return os << ')';
}

cplx bilinear_dot(const ComplexVector& z, const ComplexVector& w) {
  require_same(z, w, "bilinear_dot");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) acc += z[i] * w[i];
  return acc;
}

cplx hermitian_dot(const ComplexVector& z, const ComplexVector& w) {
  require_same(z, w, "hermitian_dot");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) acc += z[i] * std::conj(w[i]);
  return acc;
}

double hermitian_norm_sq(const ComplexVector& z) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) acc += std::norm(z[i]);
  return acc;
}

double hermitian_norm(const ComplexVector& z) noexcept { return std::sqrt(hermitian_norm_sq(z)); }

double hahn_pflug(const ComplexVector& z) noexcept {
  cplx zz = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) zz += z[i] * z[i];
  return std::sqrt(hermitian_norm_sq(z) + std::abs(zz));
}

cplx sqrt_principal(cplx zeta) noexcept {
  if (zeta.imag() == 0.0) {
    if (zeta.real() < 0.0) return {0.0, std::sqrt(-zeta.real())};
    return {std::sqrt(zeta.real()), 0.0};
  }
  return std::sqrt(zeta);
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  require_same(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fockdual
