#pragma once

#include <span>
#include <vector>

#include "fockdual/estimate.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/params.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/quadspec.hpp"

namespace fockdual {

enum class NormRoute { cone_polar, direct_mc, sup_search };

const char* to_string(NormRoute route) noexcept;

struct NormResult {
  double value = 0.0;
  NormRoute route = NormRoute::cone_polar;
  double stderr = 0.0;

  double relative_stderr() const noexcept { return value > 0.0 ? stderr / value : 0.0; }
};

/// Polar rule pair used by the cone route.
struct PolarRules {
  RadialRule radial;
  AngularRule angular;
};

/// Default cone-route rules for |T_p f|^p w_{s,p}: Gaussian radial rule
/// absorbing r^p e^{-sp r^2/2} and Haar Monte Carlo with quad.mc_samples rays.
PolarRules norm_rules(const FockParams& params, const QuadSpec& quad);

/// ||f||_{p,s} = ||T_p f||_{L^p_s(H)} through the polar formula. Throws DomainError for p = inf.
NormResult norm_fock(const Poly& f, const FockParams& params, const QuadSpec& quad);
/// Same for a family sharing one set of rays.
std::vector<NormResult> norm_fock(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad);
std::vector<NormResult> norm_fock(std::span<const Poly> family, const FockParams& params, const PolarRules& rules,
                                  const ExecPolicy& exec = {});

/// ||f||_{p,s} by Monte Carlo on C^n of |f|^p e^{-ps N_*^2/2} |z . z|^{p/2 - 1} dA.
NormResult norm_fock_direct(const Poly& f, const FockParams& params, const QuadSpec& quad);
std::vector<NormResult> norm_fock_direct(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad);

/// (int_H |h|^p w_{s,p})^{1/p}.
NormResult norm_cone(const ConeFunction& h, const FockParams& params, const QuadSpec& quad);

/// Search protocol for sup_z |f(z)| e^{-s N_*(z)^2 / 2} |z . z|^{1/2}.
struct SupSearch {
  /// Number of starts; start j depends only on (seed, j), so the estimate is monotone in budget.
  int budget = 32;
  std::uint64_t seed = 11;
  /// Initial compass step relative to 1/sqrt(s), and the stopping step.
  double initial_step = 0.25;
  double final_step = 1e-7;
};

/// Lower bound for ||f||_{inf,s}: stratified random starts and compass search in R^{2n}.
NormResult norm_sup(const FockFunction& f, int n, double s, const SupSearch& search = {});
NormResult norm_sup(const Poly& f, const FockParams& params, const SupSearch& search = {});

/// f(z) e^{-s N_*(z)^2 / 2} |z . z|^{1/2}, the weighted modulus whose sup is ||f||_{inf,s}.
double sup_weight(const ComplexVector& z, double s) noexcept;

struct IsometryCheck {
  NormResult cone;
  NormResult direct;
  double ratio = 0.0;
  /// Sum of the two relative standard errors.
  double relative_stderr = 0.0;

  bool within(double multiplier) const noexcept { return std::abs(ratio - 1.0) <= multiplier * relative_stderr; }
};

/// ||T_p f|| (cone route) against ||f||_{p,s} (direct route). Throws DomainError for f = 0 or p = inf.
IsometryCheck check_isometry(const Poly& f, const FockParams& params, const QuadSpec& quad);
std::vector<IsometryCheck> check_isometry(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad);

/// ||f||_{1,s} / ||f||_{p,s}. Throws DomainError when ||f||_{p,s} = 0.
double embedding_ratio(const Poly& f, const FockParams& params_p, const QuadSpec& quad);

/// ||f||_{inf,s} / ||f||_{p,s}. Throws DomainError when ||f||_{p,s} = 0.
double pointwise_ratio(const Poly& f, const FockParams& params, const QuadSpec& quad, const SupSearch& search = {});

}  // namespace fockdual
