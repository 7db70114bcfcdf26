#include "fockdual/cone.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fockdual/errors.hpp"

namespace fockdual {
namespace {

cplx self_dot(const ComplexVector& v) noexcept {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) acc += v[i] * v[i];
  return acc;
}

ConePoint lift(const ComplexVector& z, double sign) {
  const double nrm = hermitian_norm_sq(z);
  if (nrm == 0.0) throw DomainError("lift: the cone excludes the origin (z = 0)");
  ComplexVector v(z.dim() + 1);
  for (std::size_t i = 0; i < z.dim(); ++i) v[i] = z[i];
  v[z.dim()] = cplx(0.0, sign) * sqrt_principal(self_dot(z));
  return ConePoint::trusted(v);
}

}  // namespace

double cone_residual(const ComplexVector& v) noexcept {
  const double nrm = hermitian_norm_sq(v);
  if (nrm == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(self_dot(v)) / nrm;
}

ConePoint::ConePoint(const ComplexVector& v, double tolerance) : vec_(v) {
  if (v.dim() < 3) throw DimensionError("ConePoint: the cone lives in C^{n+1} with n >= 2");
  if (hermitian_norm_sq(v) == 0.0) throw DomainError("ConePoint: the cone excludes the origin");
  const double res = cone_residual(v);
  if (res > tolerance) {
    std::ostringstream msg;
    msg << "ConePoint: " << v << " is off the cone (relative residual " << res << ")";
    throw DomainError(msg.str());
  }
}

ConePoint ConePoint::scaled(cplx factor) const {
  if (factor == 0.0) throw DomainError("ConePoint::scaled: zero factor leaves the cone");
  return trusted(factor * vec_);
}

ConePoint lift_plus(const ComplexVector& z) { return lift(z, 1.0); }
ConePoint lift_minus(const ComplexVector& z) { return lift(z, -1.0); }

ConePoint flip(const ConePoint& w) noexcept {
  ComplexVector v = w.vec();
  v[v.dim() - 1] = -v[v.dim() - 1];
  return ConePoint::trusted(v);
}

ComplexVector project(const ConePoint& w) { return ComplexVector(w.vec().entries().first(w.base_dim())); }

bool on_branch_locus(const ComplexVector& z, double tolerance) noexcept {
  return std::abs(self_dot(z)) <= tolerance * hermitian_norm_sq(z);
}

}  // namespace fockdual
