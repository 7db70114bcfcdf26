#include "fockdual/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <string>

#include "fockdual/errors.hpp"
#include "fockdual/gauss.hpp"
#include "fockdual/parallel.hpp"
#include "fockdual/sphere_rule.hpp"

namespace fockdual {
namespace {

// Running statistics of per-node values Y_j with weights a_j. For Monte Carlo
// rules a_j = 1/J and (mean, m2) give the standard error; product rules use
// the weighted sum only. Blocks are merged in index order (Chan et al.).
struct Moments {
  std::int64_t count = 0;
  cplx weighted{};
  cplx mean{};
  double m2 = 0.0;

  void add(cplx y, double a) noexcept {
    ++count;
    weighted += a * y;
    const cplx delta = y - mean;
    mean += delta / static_cast<double>(count);
    m2 += std::real(std::conj(delta) * (y - mean));
  }

  void merge(const Moments& o) noexcept {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const cplx delta = o.mean - mean;
    const double total = na + nb;
    mean += delta * (nb / total);
    m2 += o.m2 + std::norm(delta) * na * nb / total;
    weighted += o.weighted;
    count += o.count;
  }

  double standard_error() const noexcept {
    if (count < 2) return 0.0;
    const double c = static_cast<double>(count);
    return std::sqrt(m2 / (c - 1.0) / c);
  }
};

[[noreturn]] void throw_non_finite(const ComplexVector& where, cplx value) {
  std::ostringstream msg;
  msg << "integrand value " << value << " is not finite at " << where;
  throw NonFiniteError(msg.str());
}

bool finite(cplx v) noexcept { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::size_t block_count(std::size_t total, int batch) {
  const auto b = static_cast<std::size_t>(std::max(batch, 1));
  return (total + b - 1) / b;
}

// Median of block means, taken per real and imaginary part, with the
// normal-theory standard error of the median scaled by sqrt(pi / 2).
Estimate median_of_means(const std::vector<Moments>& blocks, std::int64_t samples) {
  std::vector<double> re, im;
  for (const auto& b : blocks) {
    if (b.count == 0) continue;
    re.push_back(b.mean.real());
    im.push_back(b.mean.imag());
  }
  const std::size_t k = re.size();
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  Moments spread;
  for (std::size_t i = 0; i < k; ++i) spread.add({re[i], im[i]}, 0.0);
  Estimate e;
  e.value = {median(re), median(im)};
  e.stderr = std::sqrt(M_PI / 2.0) * spread.standard_error();
  e.samples = samples;
  e.stochastic = true;
  return e;
}

}  // namespace

// ---------------------------------------------------------------- radial rules

RadialRule RadialRule::gaussian(int n, double beta, int nodes, double extra) {
  if (n < 2) throw DomainError("RadialRule: n must be >= 2");
  if (!(beta > 0.0)) throw DomainError("RadialRule: beta must be positive");
  if (!(extra >= 0.0)) throw DomainError("RadialRule: extra exponent must be nonnegative");
  const double alpha = n - 2 + extra;
  const GaussRule g = gauss_laguerre(nodes, alpha);
  std::vector<double> radius(g.size()), weight(g.size());
  const double scale = 0.5 * std::pow(beta, -(n - 1 + extra));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = g.nodes[i] / beta;
    radius[i] = std::sqrt(u);
    weight[i] = scale * std::exp(std::log(g.weights[i]) + g.nodes[i] - extra * std::log(u));
  }
  return {n, std::move(radius), std::move(weight)};
}

RadialRule RadialRule::ball(int n, double radius_max, int nodes) {
  if (n < 2) throw DomainError("RadialRule: n must be >= 2");
  if (!(radius_max > 0.0)) throw DomainError("RadialRule: radius must be positive");
  const GaussRule g = gauss_jacobi(nodes, 0.0, n - 2.0);
  const double half = 0.5 * radius_max * radius_max;
  const double scale = 0.5 * std::pow(half, n - 1);
  std::vector<double> radius(g.size()), weight(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    radius[i] = std::sqrt(half * (1.0 + g.nodes[i]));
    weight[i] = scale * g.weights[i];
  }
  return {n, std::move(radius), std::move(weight)};
}

RadialRule RadialRule::unit(int n) {
  if (n < 2) throw DomainError("RadialRule: n must be >= 2");
  return {n, {1.0}, {1.0}};
}

// --------------------------------------------------------------- angular rules

struct AngularRule::Product {
  SphereRule first;
  SphereRule second;
};

AngularRule AngularRule::monte_carlo(int n, std::int64_t samples, HaarSampler sampler) {
  if (n < 2) throw DomainError("AngularRule: n must be >= 2");
  if (samples < 1) throw DomainError("AngularRule: samples must be >= 1");
  return {n, static_cast<std::size_t>(samples), nullptr, sampler};
}

AngularRule AngularRule::product(int n, int degree) {
  if (n < 2) throw DomainError("AngularRule: n must be >= 2");
  if (degree < 0) throw DomainError("AngularRule: degree must be >= 0");
  auto data = std::make_shared<const Product>(Product{SphereRule(n, degree), SphereRule(n - 1, degree)});
  const std::size_t size = data->first.size() * data->second.size();
  return {n, size, std::move(data), HaarSampler(0, 0)};
}

double AngularRule::node(std::size_t j, ComplexVector& xi) const {
  if (!product_) {
    sample_M_into(sampler_, n_, j, xi);
    return 1.0 / static_cast<double>(size_);
  }
  const std::size_t i1 = j / product_->second.size();
  const std::size_t i2 = j % product_->second.size();
  const auto q1 = product_->first.point(i1);
  const auto y = product_->second.point(i2);
  const std::size_t d = static_cast<std::size_t>(n_) + 1;

  // Householder reflector mapping e_0 to -sign(q1_0) q1; its columns 1..n
  // span the orthogonal complement of q1.
  std::array<double, kMaxDim> v{};
  for (std::size_t k = 0; k < d; ++k) v[k] = q1[k];
  v[0] += q1[0] >= 0.0 ? 1.0 : -1.0;
  double vv = 0.0, vy = 0.0;
  for (std::size_t k = 0; k < d; ++k) vv += v[k] * v[k];
  for (std::size_t k = 1; k < d; ++k) vy += v[k] * y[k - 1];
  const double c = 2.0 * vy / vv;

  xi = ComplexVector(d);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double q2 = (k == 0 ? 0.0 : y[k - 1]) - c * v[k];
    xi[k] = cplx(h * q1[k], h * q2);
  }
  return product_->first.weight(i1) * product_->second.weight(i2);
}

// ----------------------------------------------------------------- polar route

std::vector<Estimate> integrate_rays(const RayFunction& f, std::size_t width, double m_n,
                                     const RadialRule& radial, const AngularRule& angular,
                                     const ExecPolicy& exec) {
  if (width == 0) throw DomainError("integrate_rays: width must be positive");
  if (radial.n() != angular.n()) throw DimensionError("integrate_rays: radial and angular rules disagree on n");
  const std::size_t total = angular.size();
  const std::size_t blocks = block_count(total, exec.batch);
  const auto batch = static_cast<std::size_t>(std::max(exec.batch, 1));
  const auto radii = radial.radii();
  const auto weights = radial.weights();
  const std::size_t nr = radial.size();

  std::vector<std::vector<Moments>> partial(blocks, std::vector<Moments>(width));
  for_each_index(blocks, exec.threads, [&](std::size_t b) {
    std::vector<cplx> out(nr * width);
    std::vector<cplx> y(width);
    ComplexVector xi;
    auto& mom = partial[b];
    const std::size_t end = std::min(total, (b + 1) * batch);
    for (std::size_t j = b * batch; j < end; ++j) {
      const double a = angular.node(j, xi);
      const ConePoint point = ConePoint::trusted(xi);
      std::fill(out.begin(), out.end(), cplx{});
      f(point, radii, out);
      std::fill(y.begin(), y.end(), cplx{});
      for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t c = 0; c < width; ++c) {
          const cplx v = out[i * width + c];
          if (!finite(v)) throw_non_finite(radii[i] * xi, v);
          y[c] += weights[i] * v;
        }
      }
      for (std::size_t c = 0; c < width; ++c) mom[c].add(y[c], a);
    }
  });

  std::vector<Estimate> result(width);
  for (std::size_t c = 0; c < width; ++c) {
    Moments acc;
    for (std::size_t b = 0; b < blocks; ++b) acc.merge(partial[b][c]);
    Estimate& e = result[c];
    e.samples = static_cast<std::int64_t>(total);
    e.stochastic = angular.stochastic();
    if (e.stochastic) {
      e.value = m_n * acc.mean;
      e.stderr = m_n * acc.standard_error();
    } else {
      e.value = m_n * acc.weighted;
    }
    if (!finite(e.value)) throw NonFiniteError("integrate_rays: accumulated value is not finite");
  }
  return result;
}

std::vector<Estimate> integrate_M(const SectionFunction& f, std::size_t width, const AngularRule& angular,
                                  const ExecPolicy& exec) {
  RayFunction ray = [&f](const ConePoint& xi, std::span<const double>, std::span<cplx> out) { f(xi, out); };
  return integrate_rays(ray, width, 1.0, RadialRule::unit(angular.n()), angular, exec);
}

Estimate integrate_polar(const ConeFunction& f, double m_n, const RadialRule& radial,
                         const AngularRule& angular, const ExecPolicy& exec) {
  RayFunction ray = [&f](const ConePoint& xi, std::span<const double> radii, std::span<cplx> out) {
    for (std::size_t i = 0; i < radii.size(); ++i) out[i] = f(ConePoint::trusted(radii[i] * xi.vec()));
  };
  return integrate_rays(ray, 1, m_n, radial, angular, exec).front();
}

Estimate integrate_polar(const ConeFunction& f, const FockParams& params, const QuadSpec& quad) {
  quad.validate();
  if (params.p_infinite()) throw DomainError("integrate_polar: the Gaussian reference needs finite p");
  const int n = params.n();
  const auto radial = RadialRule::gaussian(n, params.s() * params.p() / 2.0, quad.radial_nodes);
  const auto angular = AngularRule::monte_carlo(n, quad.mc_samples, HaarSampler(quad.rng()));
  return integrate_polar(f, m_n(n), radial, angular, quad.exec());
}

// ------------------------------------------------------------- Euclidean route

Estimate integrate_cn(const FockFunction& h, int n, const EuclideanSampling& sampling, const QuadSpec& quad) {
  quad.validate();
  if (n < 1 || static_cast<std::size_t>(n) > kMaxDim) throw DimensionError("integrate_cn: unsupported n");
  const double rate = sampling.proposal_rate;
  if (!(rate > 0.0)) throw DomainError("integrate_cn: proposal rate must be positive");
  if (sampling.median_blocks < 0) throw DomainError("integrate_cn: median_blocks must be >= 0");

  const auto total = static_cast<std::size_t>(quad.mc_samples);
  const auto un = static_cast<std::size_t>(n);
  const CounterRng rng = quad.rng();
  const double sigma = 1.0 / std::sqrt(2.0 * rate);
  // n! rate^{-n}: ratio of dA = (n!/pi^n) dLeb to the proposal density (rate/pi)^n e^{-rate |z|^2}.
  const double base = std::exp(std::lgamma(n + 1.0) - n * std::log(rate));

  // With median-of-means the block layout is fixed by the block count,
  // otherwise by the batch size.
  const std::size_t groups = sampling.median_blocks > 0 ? static_cast<std::size_t>(sampling.median_blocks)
                                                        : block_count(total, quad.batch);
  const std::size_t per_group = (total + groups - 1) / groups;
  std::vector<Moments> partial(groups);
  for_each_index(groups, quad.threads, [&](std::size_t g) {
    ComplexVector z(un);
    const std::size_t end = std::min(total, (g + 1) * per_group);
    for (std::size_t i = g * per_group; i < end; ++i) {
      const std::uint64_t c0 = static_cast<std::uint64_t>(i) * 2 * un;
      for (std::size_t k = 0; k < un; ++k) z[k] = cplx(sigma * rng.normal(c0 + 2 * k), sigma * rng.normal(c0 + 2 * k + 1));
      cplx v = h(z);
      if (v != 0.0) v *= base * std::exp(rate * hermitian_norm_sq(z));
      if (!finite(v)) throw_non_finite(z, v);
      partial[g].add(v, 0.0);
    }
  });

  if (sampling.median_blocks > 0) return median_of_means(partial, static_cast<std::int64_t>(total));
  Moments acc;
  for (const auto& m : partial) acc.merge(m);
  Estimate e;
  e.value = acc.mean;
  e.stderr = acc.standard_error();
  e.samples = static_cast<std::int64_t>(total);
  e.stochastic = true;
  return e;
}

Estimate integrate_branch(const ConeFunction& g, int n, const QuadSpec& quad, double proposal_rate) {
  const double cover = static_cast<double>(n + 1) * (n + 1);
  FockFunction h = [&g, cover](const ComplexVector& z) -> cplx {
    const double zz = std::abs(bilinear_dot(z, z));
    if (zz == 0.0) return 0.0;  // measure zero: the branch locus
    return cover * (g(lift_plus(z)) + g(lift_minus(z))) / zz;
  };
  return integrate_cn(h, n, {proposal_rate, 16}, quad);
}

// ------------------------------------------------------------------------ m_n

namespace {

// Integral of |z . z|^{-1} over {N_* < R} against dA.
//
// Gram route: writing z = x + i y, the Gram matrix of (x, y) has eigenvalues
// l1 >= l2 with |z|^2 = l1 + l2, |z . z| = l1 - l2 and N_*^2 = 2 l1. The
// push-forward of Lebesgue measure is pi^{n} / Gamma_2(n/2) det^{(n-3)/2}
// times pi |l1 - l2| dl1 dl2 on the ordered eigenvalues. The integrand is
// evaluated at the representative z = sqrt(l1) e_1 + i sqrt(l2) e_2.
Estimate ball_integral_gram(int n, double radius, int nodes) {
  const double top = radius * radius / 2.0;  // l1 < top
  const GaussRule outer = gauss_jacobi(nodes, 0.0, n - 2.0);          // l1^{n-2} on (0, top)
  const GaussRule inner = gauss_jacobi(nodes, 0.0, (n - 3.0) / 2.0);  // v^{(n-3)/2} on (0, 1), l2 = v l1
  const double outer_scale = std::pow(top / 2.0, n - 1);
  const double inner_scale = std::pow(0.5, (n - 1) / 2.0);
  const double log_gamma2 = 0.5 * std::log(M_PI) + std::lgamma(n / 2.0) + std::lgamma(n / 2.0 - 0.5);
  const double prefactor = std::exp(std::lgamma(n + 1.0) + std::log(M_PI) - log_gamma2);

  double sum = 0.0;
  ComplexVector z(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < outer.size(); ++a) {
    const double l1 = top * (1.0 + outer.nodes[a]) / 2.0;
    double row = 0.0;
    for (std::size_t b = 0; b < inner.size(); ++b) {
      const double l2 = l1 * (1.0 + inner.nodes[b]) / 2.0;
      z[0] = std::sqrt(l1);
      z[1] = cplx(0.0, std::sqrt(l2));
      const double value = hahn_pflug(z) < radius ? (l1 - l2) / std::abs(bilinear_dot(z, z)) : 0.0;
      row += inner.weights[b] * value;
    }
    sum += outer.weights[a] * row;
  }
  Estimate e;
  e.value = prefactor * outer_scale * inner_scale * sum;
  e.samples = static_cast<std::int64_t>(outer.size() * inner.size());
  return e;
}

Estimate ball_integral_mc(int n, double radius, const QuadSpec& quad) {
  FockFunction h = [radius](const ComplexVector& z) -> cplx {
    if (hahn_pflug(z) >= radius) return 0.0;
    const double zz = std::abs(bilinear_dot(z, z));
    return zz == 0.0 ? 0.0 : 1.0 / zz;
  };
  return integrate_cn(h, n, {(n + 1.0) / (radius * radius), 16}, quad);
}

}  // namespace

Estimate branch_ball_integral(int n, double radius, const QuadSpec& quad, MnRoute route) {
  if (n < 2 || static_cast<std::size_t>(n) + 1 > kMaxDim) throw DimensionError("m_n: unsupported n");
  if (!(radius > 0.0)) throw DomainError("branch_ball_integral: radius must be positive");
  quad.validate();
  return route == MnRoute::gram_quadrature ? ball_integral_gram(n, radius, quad.radial_nodes)
                                           : ball_integral_mc(n, radius, quad);
}

Estimate compute_m_n(int n, const QuadSpec& quad, MnRoute route) {
  const double factor = 4.0 * (n - 1) * (n + 1.0) * (n + 1.0);
  return branch_ball_integral(n, 1.0, quad, route).scaled(factor);
}

double m_n(int n) {
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  QuadSpec quad;
  quad.radial_nodes = 32;
  const double value = compute_m_n(n, quad, MnRoute::gram_quadrature).real();
  cache.emplace(n, value);
  return value;
}

}  // namespace fockdual
