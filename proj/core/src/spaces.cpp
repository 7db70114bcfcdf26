#include "fockdual/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fockdual/errors.hpp"
#include "fockdual/weights.hpp"

namespace fockdual {
namespace {

double pow_abs(cplx v, double p) noexcept {
  if (p == 1.0) return std::abs(v);
  if (p == 2.0) return std::norm(v);
  if (p == 0.5) return std::sqrt(std::abs(v));
  return std::pow(std::abs(v), p);
}

NormResult from_integral(const Estimate& e, double p, NormRoute route) {
  NormResult r;
  r.route = route;
  const double integral = std::max(e.real(), 0.0);
  if (integral == 0.0) return r;
  r.value = std::pow(integral, 1.0 / p);
  // Delta method for I^{1/p}.
  r.stderr = r.value / integral * e.stderr / p;
  return r;
}

void require_finite_p(const FockParams& params, const char* what) {
  if (params.p_infinite()) throw DomainError(std::string(what) + ": p = inf, use norm_sup");
}

}  // namespace

const char* to_string(NormRoute route) noexcept {
  switch (route) {
    case NormRoute::cone_polar: return "cone-polar";
    case NormRoute::direct_mc: return "direct-mc";
    case NormRoute::sup_search: return "sup-search";
  }
  return "unknown";
}

PolarRules norm_rules(const FockParams& params, const QuadSpec& quad) {
  require_finite_p(params, "norm_rules");
  quad.validate();
  const double p = params.p();
  return {RadialRule::gaussian(params.n(), params.s() * p / 2.0, quad.radial_nodes, p / 2.0),
          AngularRule::monte_carlo(params.n(), quad.mc_samples, HaarSampler(quad.rng()))};
}

std::vector<NormResult> norm_fock(std::span<const Poly> family, const FockParams& params, const PolarRules& rules,
                                  const ExecPolicy& exec) {
  require_finite_p(params, "norm_fock");
  const int n = params.n();
  if (family.empty()) return {};
  int top = 0;
  for (const auto& f : family) {
    if (f.n() != n) throw DimensionError("norm_fock: polynomial and parameters differ in n");
    top = std::max(top, f.degree());
  }
  const double p = params.p();
  const double mn = m_n(n);
  // C(p) times the constant of w_{s,p}, and the radial factor r^p e^{-sp r^2/2} per node.
  const double constant = fock_constant_C(params, mn) * gaussian_form_constant(params, mn);
  const std::size_t width = family.size();
  const auto levels = static_cast<std::size_t>(top + 1);
  std::vector<double> radial_factor;
  for (double r : rules.radial.radii()) radial_factor.push_back(std::pow(r, p) * std::exp(-params.s() * p * r * r / 2.0));

  RayFunction ray = [&](const ConePoint& xi, std::span<const double> radii, std::span<cplx> out) {
    const ComplexVector base = project(xi);
    const double last = constant * pow_abs(xi.last(), p);
    std::vector<cplx> hv(levels);
    for (std::size_t c = 0; c < width; ++c) {
      const Poly& f = family[c];
      if (f.is_zero()) continue;
      f.homogeneous_values(base, hv);
      const auto deg = static_cast<std::size_t>(f.degree());
      for (std::size_t i = 0; i < radii.size(); ++i) {
        cplx v = hv[deg];
        for (std::size_t k = deg; k-- > 0;) v = v * radii[i] + hv[k];
        out[i * width + c] = last * radial_factor[i] * pow_abs(v, p);
      }
    }
  };
  const auto est = integrate_rays(ray, width, mn, rules.radial, rules.angular, exec);
  std::vector<NormResult> result;
  result.reserve(width);
  for (const auto& e : est) result.push_back(from_integral(e, p, NormRoute::cone_polar));
  return result;
}

std::vector<NormResult> norm_fock(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad) {
  return norm_fock(family, params, norm_rules(params, quad), quad.exec());
}

NormResult norm_fock(const Poly& f, const FockParams& params, const QuadSpec& quad) {
  return norm_fock(std::span<const Poly>(&f, 1), params, quad).front();
}

NormResult norm_fock_direct(const Poly& f, const FockParams& params, const QuadSpec& quad) {
  require_finite_p(params, "norm_fock_direct");
  if (f.n() != params.n()) throw DimensionError("norm_fock_direct: polynomial and parameters differ in n");
  if (f.is_zero()) return {0.0, NormRoute::direct_mc, 0.0};
  const double p = params.p(), s = params.s();
  const double rate = p * s / 2.0;
  // With proposal rate ps/2 the factor e^{-ps |z|^2 / 2} cancels against the proposal.
  FockFunction h = [&](const ComplexVector& z) -> cplx {
    const double zz = std::abs(bilinear_dot(z, z));
    if (zz == 0.0) return 0.0;
    const double weight = std::exp(-rate * (hermitian_norm_sq(z) + zz)) * std::pow(zz, p / 2.0 - 1.0);
    return pow_abs(f(z), p) * weight;
  };
  return from_integral(integrate_cn(h, params.n(), {rate, 0}, quad), p, NormRoute::direct_mc);
}

std::vector<NormResult> norm_fock_direct(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad) {
  std::vector<NormResult> out;
  out.reserve(family.size());
  for (const auto& f : family) out.push_back(norm_fock_direct(f, params, quad));
  return out;
}

NormResult norm_cone(const ConeFunction& h, const FockParams& params, const QuadSpec& quad) {
  require_finite_p(params, "norm_cone");
  const double mn = m_n(params.n());
  const double p = params.p();
  ConeFunction g = [&](const ConePoint& w) { return cplx(pow_abs(h(w), p) * gaussian_form(w, params, mn)); };
  return from_integral(integrate_polar(g, params, quad), p, NormRoute::cone_polar);
}

double sup_weight(const ComplexVector& z, double s) noexcept {
  const double zz = std::abs(bilinear_dot(z, z));
  return std::exp(-0.5 * s * (hermitian_norm_sq(z) + zz)) * std::sqrt(zz);
}

NormResult norm_sup(const FockFunction& f, int n, double s, const SupSearch& search) {
  if (n < 2 || static_cast<std::size_t>(n) + 1 > kMaxDim) throw DimensionError("norm_sup: unsupported n");
  if (!(s > 0.0)) throw DomainError("norm_sup: s must be positive");
  if (search.budget < 1) throw DomainError("norm_sup: budget must be positive");
  const auto un = static_cast<std::size_t>(n);
  const CounterRng rng(search.seed, 0x5a5);
  const double scale = 1.0 / std::sqrt(s);
  const double rmax = 5.0 * scale;
  constexpr int kStrata = 8;

  auto objective = [&](const std::array<double, 2 * kMaxDim>& x) {
    ComplexVector z(un);
    for (std::size_t k = 0; k < un; ++k) z[k] = cplx(x[2 * k], x[2 * k + 1]);
    const double w = sup_weight(z, s);
    return w == 0.0 ? 0.0 : std::abs(f(z)) * w;
  };

  double best = 0.0;
  for (int j = 0; j < search.budget; ++j) {
    const std::uint64_t c0 = static_cast<std::uint64_t>(j) * (2 * un + 1);
    std::array<double, 2 * kMaxDim> x{};
    double len = 0.0;
    for (std::size_t k = 0; k < 2 * un; ++k) {
      x[k] = rng.normal(c0 + k);
      len += x[k] * x[k];
    }
    len = std::sqrt(len);
    const double u = rng.uniform(2 * (c0 + 2 * un));
    const double r = rmax * ((j % kStrata) + u) / kStrata;
    for (std::size_t k = 0; k < 2 * un; ++k) x[k] *= len > 0.0 ? r / len : 0.0;

    double value = objective(x);
    double step = search.initial_step * scale;
    for (int iter = 0; iter < 20000 && step >= search.final_step * scale; ++iter) {
      bool moved = false;
      for (std::size_t k = 0; k < 2 * un; ++k) {
        for (double sign : {1.0, -1.0}) {
          auto trial = x;
          trial[k] += sign * step;
          const double v = objective(trial);
          if (v > value) {
            value = v;
            x = trial;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    if (!std::isfinite(value)) throw NonFiniteError("norm_sup: objective is not finite");
    best = std::max(best, value);
  }
  return {best, NormRoute::sup_search, 0.0};
}

NormResult norm_sup(const Poly& f, const FockParams& params, const SupSearch& search) {
  if (f.n() != params.n()) throw DimensionError("norm_sup: polynomial and parameters differ in n");
  if (f.is_zero()) return {0.0, NormRoute::sup_search, 0.0};
  return norm_sup([&f](const ComplexVector& z) { return f(z); }, params.n(), params.s(), search);
}

std::vector<IsometryCheck> check_isometry(std::span<const Poly> family, const FockParams& params, const QuadSpec& quad) {
  require_finite_p(params, "check_isometry");
  for (const auto& f : family) {
    if (f.is_zero()) throw DomainError("check_isometry: f = 0 has no ratio");
  }
  const auto cone = norm_fock(family, params, quad);
  const auto direct = norm_fock_direct(family, params, quad);
  std::vector<IsometryCheck> out(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto& c = out[i];
    c.cone = cone[i];
    c.direct = direct[i];
    if (c.direct.value == 0.0) throw DomainError("check_isometry: direct route returned zero");
    c.ratio = c.cone.value / c.direct.value;
    c.relative_stderr = c.cone.relative_stderr() + c.direct.relative_stderr();
  }
  return out;
}

IsometryCheck check_isometry(const Poly& f, const FockParams& params, const QuadSpec& quad) {
  return check_isometry(std::span<const Poly>(&f, 1), params, quad).front();
}

double embedding_ratio(const Poly& f, const FockParams& params_p, const QuadSpec& quad) {
  const double denom = norm_fock(f, params_p, quad).value;
  if (denom == 0.0) throw DomainError("embedding_ratio: ||f||_{p,s} = 0");
  return norm_fock(f, params_p.with_p(1.0), quad).value / denom;
}

double pointwise_ratio(const Poly& f, const FockParams& params, const QuadSpec& quad, const SupSearch& search) {
  const double denom = norm_fock(f, params, quad).value;
  if (denom == 0.0) throw DomainError("pointwise_ratio: ||f||_{p,s} = 0");
  return norm_sup(f, params, search).value / denom;
}

}  // namespace fockdual
