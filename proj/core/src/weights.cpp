#include "fockdual/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fockdual/errors.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/rng.hpp"

namespace fockdual {

double weight_phi(const ComplexVector& z, double s) {
  const double zz = std::abs(bilinear_dot(z, z));
  if (zz == 0.0) {
    std::ostringstream msg;
    msg << "weight_phi: " << z << " lies on the branch locus (z . z = 0)";
    throw DomainError(msg.str());
  }
  const double nstar = hahn_pflug(z);
  return 0.5 * (s * nstar * nstar - std::log(zz));
}

double rho(const ComplexVector& z) noexcept { return std::sqrt(std::abs(bilinear_dot(z, z))); }

double gaussian_form_constant(const FockParams& params, double m_n) {
  if (params.p_infinite()) throw DomainError("gaussian_form: p must be finite");
  const int n = params.n();
  const double sp = params.s() * params.p();
  return std::exp((n - 1) * std::log(sp) - (n - 2) * std::log(2.0) - std::log(m_n) - std::lgamma(n - 1.0));
}

double gaussian_form(const ConePoint& w, const FockParams& params, double m_n) {
  if (w.base_dim() != static_cast<std::size_t>(params.n())) throw DimensionError("gaussian_form: dimension mismatch");
  const double r2 = hermitian_norm_sq(w.vec());
  return gaussian_form_constant(params, m_n) * std::exp(-params.s() * params.p() * r2 / 2.0);
}

double gaussian_form(const ConePoint& w, const FockParams& params) {
  return gaussian_form(w, params, m_n(params.n()));
}

double lebesgue_density(int n) {
  if (n < 1) throw DomainError("lebesgue_density: n must be positive");
  return std::exp(std::lgamma(n + 1.0) - n * std::log(M_PI));
}

double harmonic_residual(const ComplexVector& z, double radius, std::int64_t samples, std::uint64_t seed) {
  if (!(radius > 0.0)) throw DomainError("harmonic_residual: R must be positive");
  if (samples < 1) throw DomainError("harmonic_residual: samples must be positive");
  const std::size_t dim = z.dim();
  const CounterRng rng(seed, 0x4c32);
  const double z2 = hermitian_norm_sq(z);
  double sup = 0.0;
  ComplexVector zeta(dim);
  for (std::int64_t k = 0; k < samples; ++k) {
    // Uniform direction on the sphere of C^dim; radius R u^{1/(2 dim)}, and
    // every eighth sample is pushed toward the boundary to probe the sup.
    const std::uint64_t c0 = static_cast<std::uint64_t>(k) * (2 * dim + 1);
    ComplexVector dir(dim);
    for (std::size_t j = 0; j < dim; ++j) dir[j] = cplx(rng.normal(c0 + 2 * j), rng.normal(c0 + 2 * j + 1));
    const double dn = hermitian_norm(dir);
    if (dn == 0.0) continue;
    double u = rng.uniform(2 * (c0 + 2 * dim));
    if (k % 8 == 7) u = 1.0 - 1e-6 * u;
    const double r = radius * std::pow(u, 1.0 / (2.0 * dim));
    dir *= r / dn;
    zeta = z + dir;
    const double h = 2.0 * std::real(hermitian_dot(dir, z));
    sup = std::max(sup, std::abs(hermitian_norm_sq(zeta) - z2 - h));
  }
  return sup;
}

}  // namespace fockdual
