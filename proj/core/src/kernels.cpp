#include "fockdual/kernels.hpp"

#include <cmath>

#include "fockdual/errors.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/weights.hpp"

namespace fockdual {
namespace {

void require_dims(const ConePoint& z, const ConePoint& w, const FockParams& params) {
  const auto n = static_cast<std::size_t>(params.n());
  if (z.base_dim() != n || w.base_dim() != n) throw DimensionError("kernel: points must lie in C^{n+1}");
}

}  // namespace

double kernel_coefficient(int k, const FockParams& params) {
  if (k < 0) throw DomainError("kernel_coefficient: k must be >= 0");
  const int n = params.n();
  return std::exp(k * std::log(params.s()) - std::lgamma(k + 1.0)) * (2.0 * k + n - 1) / (n - 1.0);
}

cplx kernel_profile(cplx t, const FockParams& params) noexcept {
  const double s = params.s();
  return (1.0 + 2.0 * s * t / (params.n() - 1.0)) * std::exp(s * t);
}

cplx bergman_kernel(const ConePoint& z, const ConePoint& w, const FockParams& params) {
  require_dims(z, w, params);
  return kernel_profile(hermitian_dot(z.vec(), w.vec()), params);
}

cplx kernel_from_basis(const ConePoint& z, const ConePoint& w, const FockParams& params, int kmax) {
  require_dims(z, w, params);
  if (kmax < 0) throw DomainError("kernel_from_basis: kmax must be >= 0");
  const cplx t = hermitian_dot(z.vec(), w.vec());
  cplx power = 1.0, sum = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    sum += kernel_coefficient(k, params) * power;
    power *= t;
  }
  return sum;
}

cplx odd_kernel(const ConePoint& z, const ConePoint& w, const FockParams& params) {
  require_dims(z, w, params);
  return 0.5 * (bergman_kernel(z, w, params) - bergman_kernel(z, flip(w), params));
}

BranchKernelValue odd_kernel_branch(const ConePoint& z, const ConePoint& w, const FockParams& params) {
  require_dims(z, w, params);
  const ComplexVector base = project(w);
  if (on_branch_locus(base)) return {odd_kernel(z, w, params), true};
  const ConePoint sheet = lift_plus(base);
  const cplx factor = std::conj(w.last()) / std::conj(sheet.last());
  const cplx k1 = factor * bergman_kernel(z, sheet, params);
  const cplx k2 = factor * bergman_kernel(z, flip(sheet), params);
  return {0.5 * (k1 - k2), false};
}

KernelSection::KernelSection(ConePoint base, FockParams params, Variant variant)
    : base_(std::move(base)), params_(params), variant_(variant) {
  if (base_.base_dim() != static_cast<std::size_t>(params_.n())) throw DimensionError("KernelSection: base point dimension");
}

cplx KernelSection::operator()(const ConePoint& w) const {
  return variant_ == Variant::full ? bergman_kernel(w, base_, params_) : odd_kernel(w, base_, params_);
}

ConeFunction KernelSection::as_function() const {
  return [section = *this](const ConePoint& w) { return section(w); };
}

Estimate kernel_p_integral(const ConePoint& z, const FockParams& params, const QuadSpec& quad) {
  if (z.base_dim() != static_cast<std::size_t>(params.n())) throw DimensionError("kernel_p_integral: dimension");
  const double mn = m_n(params.n());
  const double p = params.p();
  ConeFunction f = [&](const ConePoint& w) {
    return cplx(std::pow(std::abs(odd_kernel(z, w, params)), p) * gaussian_form(w, params, mn));
  };
  return integrate_polar(f, params, quad);
}

double j_series(const ConePoint& z, const FockParams& params, int kmax) {
  if (z.base_dim() != static_cast<std::size_t>(params.n())) throw DimensionError("j_series: dimension");
  if (params.p_infinite()) throw DomainError("j_series: p must be finite");
  const int n = params.n();
  const double sp = params.s() * params.p();
  const double beta = sp / 2.0;
  // m_n times the constant of w_{s,p}; the m_n of the polar formula cancels.
  const double log_form = (n - 1) * std::log(sp) - (n - 2) * std::log(2.0) - std::lgamma(n - 1.0);
  double sum = 0.0;
  int small = 0;
  for (int k = 0; k <= kmax; ++k) {
    const double log_series = 2.0 * k * std::log(sp / 2.0) - 2.0 * std::lgamma(k + 1.0);
    // int_0^inf r^{2k+2n-3} e^{-beta r^2} dr = Gamma(k+n-1) / (2 beta^{k+n-1})
    const double log_radial = log_form + std::lgamma(k + n - 1.0) - std::log(2.0) - (k + n - 1) * std::log(beta);
    const double moment = moment_M(z, k, n);
    const double term = moment == 0.0 ? 0.0 : std::exp(log_series + log_radial) * moment;
    if (!std::isfinite(term)) throw ConvergenceError("j_series: term overflow");
    sum += term;
    small = term < 1e-15 * sum ? small + 1 : 0;
    if (small == 3) return sum;
  }
  throw ConvergenceError("j_series: tail not converged within kmax terms");
}

Estimate j_quadrature(const ConePoint& z, const FockParams& params, const QuadSpec& quad) {
  if (z.base_dim() != static_cast<std::size_t>(params.n())) throw DimensionError("j_quadrature: dimension");
  const double mn = m_n(params.n());
  const double sp = params.s() * params.p();
  ConeFunction f = [&](const ConePoint& w) {
    return cplx(std::exp(sp * std::real(hermitian_dot(z.vec(), w.vec()))) * gaussian_form(w, params, mn));
  };
  return integrate_polar(f, params, quad);
}

}  // namespace fockdual
