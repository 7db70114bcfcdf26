#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fockdual/cone.hpp"
#include "fockdual/estimate.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/params.hpp"
#include "fockdual/quadspec.hpp"

namespace fockdual {

using ConeFunction = std::function<cplx(const ConePoint&)>;
using FockFunction = std::function<cplx(const ComplexVector&)>;

/// Radial rule in polar coordinates on the cone:
///   sum_i weight[i] h(radius[i])  ~  int_0^inf r^{2n-3} h(r) dr.
class RadialRule {
 public:
  /// Matched to a Gaussian reference e^{-beta r^2}: exact when
  /// h(r) = r^{2 extra} e^{-beta r^2} P(r^2) with deg P <= 2 nodes - 1.
  static RadialRule gaussian(int n, double beta, int nodes, double extra = 0.0);
  /// Supported on [0, R]: exact when h(r) = P(r^2) on [0, R], deg P <= 2 nodes - 1.
  static RadialRule ball(int n, double radius, int nodes);
  /// Single node r = 1 with weight 1: turns a ray integral into evaluation on M.
  static RadialRule unit(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return radius_.size(); }
  std::span<const double> radii() const noexcept { return radius_; }
  std::span<const double> weights() const noexcept { return weight_; }

 private:
  RadialRule(int n, std::vector<double> radius, std::vector<double> weight)
      : n_(n), radius_(std::move(radius)), weight_(std::move(weight)) {}
  int n_;
  std::vector<double> radius_;
  std::vector<double> weight_;
};

/// Rule for the invariant probability measure on M: either Haar Monte
/// Carlo or a deterministic product over (q1, q2) with xi = (q1 + i q2)/sqrt 2,
/// q1 on S^n and q2 on the unit sphere of q1's orthogonal complement.
/// The product rule is exact for polynomials in (xi, conj xi) of total degree <= degree.
class AngularRule {
 public:
  static AngularRule monte_carlo(int n, std::int64_t samples, HaarSampler sampler);
  static AngularRule product(int n, int degree);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  bool stochastic() const noexcept { return !product_; }

  /// Writes node j into xi and returns its weight.
  double node(std::size_t j, ComplexVector& xi) const;

 private:
  struct Product;
  AngularRule(int n, std::size_t size, std::shared_ptr<const Product> product, HaarSampler sampler)
      : n_(n), size_(size), product_(std::move(product)), sampler_(sampler) {}
  int n_;
  std::size_t size_;
  std::shared_ptr<const Product> product_;
  HaarSampler sampler_;
};

/// Integrand evaluated along one ray: out[i * width + c] = f_c(radii[i] * xi).
using RayFunction =
    std::function<void(const ConePoint& xi, std::span<const double> radii, std::span<cplx> out)>;

/// m_n * sum_j a_j sum_i W_i f_c(r_i xi_j) for each component c: the polar
/// formula for the integral over H against the cone volume form.
std::vector<Estimate> integrate_rays(const RayFunction& f, std::size_t width, double m_n,
                                     const RadialRule& radial, const AngularRule& angular,
                                     const ExecPolicy& exec = {});

/// Function on M with several components: out[c] = f_c(xi).
using SectionFunction = std::function<void(const ConePoint& xi, std::span<cplx> out)>;

/// int_M f_c d mu for each component c.
std::vector<Estimate> integrate_M(const SectionFunction& f, std::size_t width, const AngularRule& angular,
                                  const ExecPolicy& exec = {});

/// Scalar form of integrate_rays. Throws NonFiniteError naming the offending point.
Estimate integrate_polar(const ConeFunction& f, double m_n, const RadialRule& radial,
                         const AngularRule& angular, const ExecPolicy& exec = {});

/// Integral of f over H with the default rules for (n, s, p): Gaussian
/// radial rule matched to e^{-sp r^2/2} and Haar Monte Carlo on M.
Estimate integrate_polar(const ConeFunction& f, const FockParams& params, const QuadSpec& quad);

/// Monte Carlo on C^n against the normalized volume dA (unit ball has volume
/// one), importance-sampled from the complex Gaussian (rate/pi)^n e^{-rate |z|^2}.
struct EuclideanSampling {
  double proposal_rate = 1.0;
  /// 0: plain mean and sample standard error. Otherwise median of block means.
  int median_blocks = 0;
};

Estimate integrate_cn(const FockFunction& h, int n, const EuclideanSampling& sampling, const QuadSpec& quad);

/// Integral over H through the branched cover:
///   int_H g = (n+1)^2 int_{C^n} [g(lift_plus z) + g(lift_minus z)] |z . z|^{-1} dA(z),
/// median of 16 block means.
Estimate integrate_branch(const ConeFunction& g, int n, const QuadSpec& quad, double proposal_rate = 1.0);

enum class MnRoute {
  /// Gauss quadrature in the eigenvalues of the real Gram matrix of (Re z, Im z).
  gram_quadrature,
  /// Monte Carlo over C^n of the indicator of {N_* < 1}.
  monte_carlo,
};

/// int_{N_*(z) < radius} |z . z|^{-1} dA(z); homogeneous of degree 2n - 2 in radius.
Estimate branch_ball_integral(int n, double radius, const QuadSpec& quad,
                              MnRoute route = MnRoute::gram_quadrature);

/// m_n = 4 (n-1) (n+1)^2 int_{N_*(z) < 1} |z . z|^{-1} dA(z).
Estimate compute_m_n(int n, const QuadSpec& quad, MnRoute route = MnRoute::gram_quadrature);

/// Deterministic m_n, computed once per n and cached.
double m_n(int n);

}  // namespace fockdual
