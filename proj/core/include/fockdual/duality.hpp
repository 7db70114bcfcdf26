#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fockdual/check.hpp"
#include "fockdual/estimate.hpp"
#include "fockdual/integrate.hpp"
#include "fockdual/kernels.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/spaces.hpp"

namespace fockdual {

/// int_H F1 conj(F2) w_{s,2}; params.p is ignored.
Estimate pairing_cone(const ConeFunction& f1, const ConeFunction& f2, const FockParams& params, const QuadSpec& quad);
Estimate pairing_cone(const ConeFunction& f1, const ConeFunction& f2, const FockParams& params,
                      const PolarRules& rules, const ExecPolicy& exec = {});

/// Default rules for w_{s,2}: Gaussian radial rule with weight e^{-s r^2} and Haar Monte Carlo.
PolarRules pairing_rules(const FockParams& params, const QuadSpec& quad);

/// L(f, g) = int_H T_p f conj(T g) w_{s,2} by quadrature. Throws DomainError for p = inf.
Estimate pairing_fock(const Poly& f, const Poly& g, const FockParams& params, const QuadSpec& quad);

/// Exact L on polynomials of degree <= degree: L(f, g) = C(p)^{1/p} sum f_a conj(g_b) G_ab
/// with G_ab = int_H |w_{n+1}|^2 w^a conj(w^b) w_{s,2}. Entries vanish unless |a| = |b|;
/// the radial factor is a Gamma integral and the angular moments come from
/// the product rule on M of degree 2 degree + 2, which is exact for them.
class PairingGram {
 public:
  PairingGram(int n, double s, int degree);

  int n() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  /// Entry for two multi-indices of equal total degree (zero otherwise).
  cplx entry(const MultiIndex& a, const MultiIndex& b) const;
  /// Throws DomainError when a degree exceeds degree(), or p or s differ from construction.
  cplx operator()(const Poly& f, const Poly& g, const FockParams& params) const;

 private:
  struct Block {
    std::vector<MultiIndex> indices;
    std::vector<cplx> values;  // row-major
  };
  int n_;
  double s_;
  int degree_;
  std::vector<Block> blocks_;  // by total degree
};

/// Kernel representation g of a point functional G: G(f) = L(f, g) on the
/// lifted odd class. On the cone, T g (w) = sum_j d_j K~(w, zeta_j).
class Representer {
 public:
  /// Cone functional sum_j c_j h(zeta_j): d_j = conj(c_j).
  /// Fock functional sum_j c_j f(z_j): zeta_j = lift_plus(z_j) and
  /// d_j = conj(c_j / (C(p)^{1/p} phi_{n+1}(z_j))). Throws DomainError when p = inf
  /// or a point sits on the branch locus (where T_p f vanishes).
  Representer(const PointFunctional& functional, const FockParams& params);

  const FockParams& params() const noexcept { return params_; }
  const std::vector<ConePoint>& nodes() const noexcept { return nodes_; }
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }

  /// T g (w) = sum_j d_j K~(w, zeta_j), flip-odd.
  cplx on_cone(const ConePoint& w) const;
  /// g on C^n, the entire function with T g = on_cone.
  cplx on_fock(const ComplexVector& z) const;

  ConeFunction cone_function() const;
  FockFunction fock_function() const;

  Representer scaled(cplx factor) const;

 private:
  Representer(FockParams params, std::vector<ConePoint> nodes, std::vector<cplx> coeffs)
      : params_(params), nodes_(std::move(nodes)), coeffs_(std::move(coeffs)) {}
  FockParams params_;
  std::vector<ConePoint> nodes_;
  std::vector<cplx> coeffs_;
};

Representer represent_functional(const PointFunctional& functional, const FockParams& params);

/// L(z^a, g) for every multi-index a of degree <= degree, in grlex order.
std::vector<Estimate> pairing_moments(const Representer& g, int degree, const PolarRules& rules,
                                      const ExecPolicy& exec = {});

/// Materialized cubature for ||f||_{p,s} over the span of monomials of
/// degree <= degree: ||f||^p ~ sum_i omega_i |sum_a f_a B_ia|^p.
class NormCubature {
 public:
  NormCubature(const FockParams& params, int degree, std::int64_t rays, int radial_nodes, std::uint64_t seed);

  std::size_t basis_size() const noexcept { return basis_; }
  std::size_t nodes() const noexcept { return omega_.size(); }
  const FockParams& params() const noexcept { return params_; }
  int degree() const noexcept { return degree_; }

  /// sum_i omega_i |v_i|^p for node values v.
  double pth_power(std::span<const cplx> values) const;
  /// Node values of sum_a c_a z^a.
  void values(std::span<const cplx> coeffs, std::span<cplx> out) const;
  /// out += delta * column a.
  void add_column(std::size_t a, cplx delta, std::span<cplx> out) const;
  /// Values of monomial a at every node.
  std::span<const cplx> column(std::size_t a) const noexcept;
  std::span<const double> weights() const noexcept { return omega_; }
  double norm(std::span<const cplx> coeffs) const;

 private:
  FockParams params_;
  int degree_;
  std::size_t basis_;
  std::vector<double> omega_;
  std::vector<cplx> matrix_;  // basis-major, one column of nodes() values per monomial
};

/// Search protocol for sup{|sum_a c_a l_a| : ||sum_a c_a z^a||_{p,s} <= 1}.
struct DualSearch {
  /// Starts: a Riesz-type start conj(l), then random complex Gaussian starts.
  /// Start j depends only on (seed, j), so the bound is monotone in budget.
  int budget = 6;
  std::uint64_t seed = 13;
  int max_sweeps = 25;
  double initial_step = 0.5;
  double final_step = 1e-3;
};

/// Lower bound for ||L_g|| given the moments l_a = L(z^a, g) and a norm cubature of matching basis.
double dual_norm_lb(std::span<const cplx> moments, const NormCubature& cubature, const DualSearch& search = {});
/// Moments computed with pairing_moments(g, cubature.degree(), rules).
double dual_norm_lb(const Representer& g, const NormCubature& cubature, const PolarRules& rules,
                    const DualSearch& search = {}, const ExecPolicy& exec = {});

struct DualityConstants {
  /// |L(f, g)| <= C_pairing ||f||_{p,s} ||g||_{inf,s}.
  double c_pairing = 0.0;
  /// C_sandwich^{-1} <= dual_norm_lb(g) / ||g||_{inf,s} <= C_sandwich.
  double c_sandwich = 0.0;
  /// ||g||_{inf,s} <= C_growth sum_j |c_j| e^{s |z_j|^2 / 2}.
  double c_growth = 0.0;
};

struct DualityConfig {
  FockParams params{2, 1.0, 1.0};
  int functionals = 20;
  int max_points = 5;
  /// Functional points satisfy N_*(z) in [min_radius, max_radius] and |z . z| >= 0.1 |z|^2.
  double min_radius = 0.3;
  double max_radius = 1.0;
  /// Number of monomial test functions in the representation check.
  int residual_functions = 20;
  /// Product rule degree for the pairing moments; 0 selects Haar Monte Carlo.
  int product_degree = 0;
  QuadSpec quad{};
  std::int64_t norm_rays = 1500;
  int norm_radial = 16;
  int search_degree = 4;
  DualSearch search{};
  SupSearch sup{};
  int pairs = 100;
  int pair_degree = 4;
  double tol_abs = 1e-8;
  double tol_stderr_mult = 3.0;
  /// Frozen constants; absent values skip the matching check (calibration runs).
  std::optional<DualityConstants> constants;
};

/// Per-functional record of the experiment.
struct FunctionalRecord {
  std::string descriptor;
  std::size_t points = 0;
  double g_norm_sup = 0.0;
  double functional_norm_lb = 0.0;
  double sandwich_ratio = 0.0;
  double growth_ratio = 0.0;
  /// |G(f) - L(f, g)| for each test monomial, with the stderr of L.
  std::vector<double> residuals;
  std::vector<double> residual_stderr;
};

struct DualityReport {
  DualityConfig config;
  double m_n = 0.0;
  std::vector<FunctionalRecord> functionals;
  std::vector<Check> checks;
  /// Raw extremes for calibration.
  double max_pairing_ratio = 0.0;
  double min_sandwich_ratio = 0.0;
  double max_sandwich_ratio = 0.0;
  double max_growth_ratio = 0.0;
  bool pass = false;
  std::string error;
};

/// The experiment family: functional 0 is evaluation at one point with weight 1; functional j
/// has 1 + j mod max_points points. Deterministic in config.quad.seed.
std::vector<PointFunctional> duality_family(const DualityConfig& config);

/// Representation residuals, boundedness on random pairs and the two-sided
/// sandwich. Infrastructure failures are reported in error, never thrown.
DualityReport run_duality_experiment(const DualityConfig& config);

void to_json(nlohmann::json& j, const DualityReport& report);

}  // namespace fockdual
