#pragma once

#include <cstdint>

#include "fockdual/cone.hpp"
#include "fockdual/params.hpp"

namespace fockdual {

/// phi(z) = (s N_*(z)^2 - log |z . z|) / 2. Throws DomainError on the branch locus z . z = 0.
double weight_phi(const ComplexVector& z, double s);

/// rho(z) = sqrt(|z . z|).
double rho(const ComplexVector& z) noexcept;

/// Normalizing constant (sp)^{n-1} / (2^{n-2} m_n (n-2)!) of the Gaussian volume form.
double gaussian_form_constant(const FockParams& params, double m_n);

/// w_{s,p}(w) = gaussian_form_constant * e^{-sp |w|^2 / 2}: a probability density on H.
double gaussian_form(const ConePoint& w, const FockParams& params, double m_n);
/// Same, with the cached m_n.
double gaussian_form(const ConePoint& w, const FockParams& params);

/// n! / pi^n: density of dA against Lebesgue measure on C^n, so the unit ball has volume one.
double lebesgue_density(int n);

/// Sampled sup over |zeta - z| < R of | |zeta|^2 - |z|^2 - 2 Re <zeta - z, z> |.
/// The exact sup is R^2; samples lie in the open ball.
double harmonic_residual(const ComplexVector& z, double radius, std::int64_t samples, std::uint64_t seed = 0);

}  // namespace fockdual
