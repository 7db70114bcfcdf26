#pragma once

#include "fockdual/cone.hpp"
#include "fockdual/estimate.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/params.hpp"
#include "fockdual/quadspec.hpp"

namespace fockdual {

/// a_k = s^k (2k + n - 1) / ((n - 1) k!): the coefficient of (z . conj w)^k in the kernel.
double kernel_coefficient(int k, const FockParams& params);

/// Closed-form kernel of the cone space with weight w_{s,2}:
/// K(z, w) = (1 + 2s t / (n - 1)) e^{s t}, t = <z, w> = sum_j z_j conj(w_j).
cplx bergman_kernel(const ConePoint& z, const ConePoint& w, const FockParams& params);
/// Same as a function of t = <z, w>.
cplx kernel_profile(cplx t, const FockParams& params) noexcept;

/// sum_{k <= kmax} a_k <z, w>^k. Throws DomainError for kmax < 0.
cplx kernel_from_basis(const ConePoint& z, const ConePoint& w, const FockParams& params, int kmax);

/// Kernel of the flip-odd subspace: (K(z, w) - K(z, flip w)) / 2.
cplx odd_kernel(const ConePoint& z, const ConePoint& w, const FockParams& params);

struct BranchKernelValue {
  cplx value;
  /// True when w sat on the branch locus and the antisymmetrized form was used.
  bool used_fallback;
};

/// (K^1 - K^2) / 2 with K^1 = c K(z, phi(F w)), K^2 = c K(z, A phi(F w)) and
/// the branch factor c = conj(w_{n+1}) / conj(phi_{n+1}(F w)).
BranchKernelValue odd_kernel_branch(const ConePoint& z, const ConePoint& w, const FockParams& params);

/// w -> K(w, base) or w -> K~(w, base).
class KernelSection {
 public:
  enum class Variant { full, odd };

  KernelSection(ConePoint base, FockParams params, Variant variant);

  const ConePoint& base() const noexcept { return base_; }
  const FockParams& params() const noexcept { return params_; }
  Variant variant() const noexcept { return variant_; }

  cplx operator()(const ConePoint& w) const;
  ConeFunction as_function() const;

 private:
  ConePoint base_;
  FockParams params_;
  Variant variant_;
};

/// int_H |K~(z, w)|^p w_{s,p}(w) through the polar formula.
Estimate kernel_p_integral(const ConePoint& z, const FockParams& params, const QuadSpec& quad);

/// Spectral form of J_s(z) = int_H |e^{(s/2) <z, w>}|^{2p} w_{s,p}(w):
/// sum_k (ps/2)^{2k} / (k!)^2 * (radial Gamma factor) * moment_M(z, k).
/// Stops once three consecutive terms fall below 1e-15 of the partial sum;
/// throws ConvergenceError when kmax is reached first.
double j_series(const ConePoint& z, const FockParams& params, int kmax = 2000);

/// The same integral by integrate_polar.
Estimate j_quadrature(const ConePoint& z, const FockParams& params, const QuadSpec& quad);

}  // namespace fockdual
