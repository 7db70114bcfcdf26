#include "fockdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fockdual/errors.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/weights.hpp"

namespace fockdual {
namespace {

// |v|^p through |v|^2, which avoids hypot in the inner loops.
double pow_abs(cplx v, double p) noexcept {
  const double q = std::norm(v);
  if (p == 1.0) return std::sqrt(q);
  if (p == 2.0) return q;
  if (p == 0.5) return std::sqrt(std::sqrt(q));
  return std::pow(q, p / 2.0);
}

void require_finite_p(const FockParams& params, const char* what) {
  if (params.p_infinite()) throw DomainError(std::string(what) + ": p must be finite");
}

// Values of every monomial in `indices` at z, using one power table.
void monomial_values(const ComplexVector& z, const std::vector<MultiIndex>& indices, int degree, std::span<cplx> out) {
  const auto width = static_cast<std::size_t>(degree + 1);
  std::array<cplx, kMaxDim * 16> powers{};
  std::vector<cplx> big;
  cplx* table = powers.data();
  if (z.dim() * width > powers.size()) {
    big.resize(z.dim() * width);
    table = big.data();
  }
  for (std::size_t v = 0; v < z.dim(); ++v) {
    cplx acc = 1.0;
    for (std::size_t e = 0; e < width; ++e) {
      table[v * width + e] = acc;
      acc *= z[v];
    }
  }
  for (std::size_t a = 0; a < indices.size(); ++a) {
    cplx m = 1.0;
    for (std::size_t v = 0; v < z.dim(); ++v) {
      const int e = indices[a][v];
      if (e != 0) m *= table[v * width + static_cast<std::size_t>(e)];
    }
    out[a] = m;
  }
}

int total_degree(const MultiIndex& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

// k^{(m)}(t) for the kernel profile k(t) = (1 + 2st/(n-1)) e^{st}.
cplx profile_derivative(cplx t, int m, double s, int n) {
  return std::exp(s * t) * std::pow(s, m) * (1.0 + 2.0 * s * t / (n - 1.0) + 2.0 * m / (n - 1.0));
}

// D(a, b) = (k(a + b) - k(a - b)) / (2b), even in b; Taylor series near b = 0.
cplx odd_quotient(cplx a, cplx b, const FockParams& params) {
  const double s = params.s();
  const int n = params.n();
  if (std::abs(s * b) < 1e-3) {
    const cplx b2 = b * b;
    return profile_derivative(a, 1, s, n) + profile_derivative(a, 3, s, n) * b2 / 6.0 +
           profile_derivative(a, 5, s, n) * b2 * b2 / 120.0 + profile_derivative(a, 7, s, n) * b2 * b2 * b2 / 5040.0;
  }
  return (kernel_profile(a + b, params) - kernel_profile(a - b, params)) / (2.0 * b);
}

}  // namespace

// -------------------------------------------------------------------- pairings

PolarRules pairing_rules(const FockParams& params, const QuadSpec& quad) {
  quad.validate();
  return {RadialRule::gaussian(params.n(), params.s(), quad.radial_nodes),
          AngularRule::monte_carlo(params.n(), quad.mc_samples, HaarSampler(quad.rng()))};
}

Estimate pairing_cone(const ConeFunction& f1, const ConeFunction& f2, const FockParams& params,
                      const PolarRules& rules, const ExecPolicy& exec) {
  const FockParams two = params.with_p(2.0);
  const double mn = m_n(params.n());
  ConeFunction integrand = [&](const ConePoint& w) {
    return f1(w) * std::conj(f2(w)) * gaussian_form(w, two, mn);
  };
  return integrate_polar(integrand, mn, rules.radial, rules.angular, exec);
}

Estimate pairing_cone(const ConeFunction& f1, const ConeFunction& f2, const FockParams& params, const QuadSpec& quad) {
  return pairing_cone(f1, f2, params, pairing_rules(params, quad), quad.exec());
}

Estimate pairing_fock(const Poly& f, const Poly& g, const FockParams& params, const QuadSpec& quad) {
  require_finite_p(params, "pairing_fock");
  const ConeFun tf = lift_T_p(f, params);
  const ConeFun tg = lift_T(g);
  return pairing_cone([&](const ConePoint& w) { return eval_cone(tf, w); },
                      [&](const ConePoint& w) { return eval_cone(tg, w); }, params, quad);
}

// ---------------------------------------------------------------- PairingGram

PairingGram::PairingGram(int n, double s, int degree) : n_(n), s_(s), degree_(degree) {
  if (degree < 0) throw DomainError("PairingGram: degree must be >= 0");
  const FockParams two(n, s, 2.0);
  const auto all = all_multi_indices(n, degree);
  blocks_.resize(static_cast<std::size_t>(degree + 1));
  for (const auto& a : all) blocks_[static_cast<std::size_t>(total_degree(a))].indices.push_back(a);
  for (auto& b : blocks_) b.values.assign(b.indices.size() * b.indices.size(), cplx{});

  const AngularRule rule = AngularRule::product(n, 2 * degree + 2);
  std::vector<cplx> mono(all.size());
  ComplexVector xi;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double a = rule.node(j, xi) * std::norm(xi[static_cast<std::size_t>(n)]);
    ComplexVector base(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < base.dim(); ++k) base[k] = xi[k];
    monomial_values(base, all, degree, mono);
    std::size_t offset = 0;
    for (auto& b : blocks_) {
      const std::size_t m = b.indices.size();
      for (std::size_t r = 0; r < m; ++r) {
        const cplx left = a * mono[offset + r];
        for (std::size_t c = 0; c < m; ++c) b.values[r * m + c] += left * std::conj(mono[offset + c]);
      }
      offset += m;
    }
  }
  // m_n times the w_{s,2} constant, times int_0^inf r^{2k+2+2n-3} e^{-s r^2} dr = Gamma(k+n) / (2 s^{k+n}).
  const double mn = m_n(n);
  const double form = mn * gaussian_form_constant(two, mn);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const double dk = static_cast<double>(k);
    const double radial = std::exp(std::lgamma(dk + n) - std::log(2.0) - (dk + n) * std::log(s));
    for (auto& v : blocks_[k].values) v *= form * radial;
  }
}

cplx PairingGram::entry(const MultiIndex& a, const MultiIndex& b) const {
  const int da = total_degree(a);
  if (da != total_degree(b)) return 0.0;
  if (da > degree_) throw DomainError("PairingGram: multi-index above the table degree");
  const auto& blk = blocks_[static_cast<std::size_t>(da)];
  const auto ia = std::find(blk.indices.begin(), blk.indices.end(), a) - blk.indices.begin();
  const auto ib = std::find(blk.indices.begin(), blk.indices.end(), b) - blk.indices.begin();
  return blk.values[static_cast<std::size_t>(ia) * blk.indices.size() + static_cast<std::size_t>(ib)];
}

cplx PairingGram::operator()(const Poly& f, const Poly& g, const FockParams& params) const {
  require_finite_p(params, "PairingGram");
  if (params.n() != n_ || f.n() != n_ || g.n() != n_) throw DimensionError("PairingGram: dimension mismatch");
  if (params.s() != s_) throw DomainError("PairingGram: table built for a different s");
  if (f.degree() > degree_ || g.degree() > degree_) throw DomainError("PairingGram: polynomial degree above the table");
  // Coefficients laid out per block.
  std::vector<std::vector<cplx>> cf(blocks_.size()), cg(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    cf[k].assign(blocks_[k].indices.size(), cplx{});
    cg[k].assign(blocks_[k].indices.size(), cplx{});
  }
  auto scatter = [&](const Poly& h, std::vector<std::vector<cplx>>& out) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto span = h.alpha(i);
      const MultiIndex a(span.begin(), span.end());
      const auto& blk = blocks_[static_cast<std::size_t>(total_degree(a))];
      const auto pos = std::find(blk.indices.begin(), blk.indices.end(), a) - blk.indices.begin();
      out[static_cast<std::size_t>(total_degree(a))][static_cast<std::size_t>(pos)] = h.coeff(i);
    }
  };
  scatter(f, cf);
  scatter(g, cg);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const std::size_t m = blocks_[k].indices.size();
    for (std::size_t r = 0; r < m; ++r) {
      if (cf[k][r] == 0.0) continue;
      for (std::size_t c = 0; c < m; ++c) acc += cf[k][r] * std::conj(cg[k][c]) * blocks_[k].values[r * m + c];
    }
  }
  return std::pow(fock_constant_C(params), 1.0 / params.p()) * acc;
}

// ----------------------------------------------------------------- Representer

Representer::Representer(const PointFunctional& functional, const FockParams& params) : params_(params) {
  if (functional.n() != params.n()) throw DimensionError("Representer: functional and parameters differ in n");
  if (functional.domain() == PointFunctional::Domain::cone) {
    for (const auto& t : functional.terms()) {
      nodes_.push_back(ConePoint(t.point));
      coeffs_.push_back(std::conj(t.weight));
    }
    return;
  }
  require_finite_p(params, "Representer");
  const double lift = std::pow(fock_constant_C(params), 1.0 / params.p());
  for (const auto& t : functional.terms()) {
    if (on_branch_locus(t.point)) {
      std::ostringstream msg;
      msg << "Representer: point " << t.point << " lies on the branch locus, where T_p f vanishes";
      throw DomainError(msg.str());
    }
    const ConePoint zeta = lift_plus(t.point);
    nodes_.push_back(zeta);
    coeffs_.push_back(std::conj(t.weight / (lift * zeta.last())));
  }
}

cplx Representer::on_cone(const ConePoint& w) const {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) acc += coeffs_[j] * odd_kernel(w, nodes_[j], params_);
  return acc;
}

cplx Representer::on_fock(const ComplexVector& z) const {
  if (z.dim() != static_cast<std::size_t>(params_.n())) throw DimensionError("Representer: point dimension");
  const cplx last = cplx(0.0, 1.0) * sqrt_principal(bilinear_dot(z, z));
  cplx acc = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const ConePoint& zeta = nodes_[j];
    cplx a = 0.0;
    for (std::size_t k = 0; k < z.dim(); ++k) a += z[k] * std::conj(zeta[k]);
    const cplx tail = std::conj(zeta.last());
    acc += coeffs_[j] * tail * odd_quotient(a, last * tail, params_);
  }
  return acc;
}

ConeFunction Representer::cone_function() const {
  return [self = *this](const ConePoint& w) { return self.on_cone(w); };
}

FockFunction Representer::fock_function() const {
  return [self = *this](const ComplexVector& z) { return self.on_fock(z); };
}

Representer Representer::scaled(cplx factor) const {
  std::vector<cplx> c = coeffs_;
  for (auto& v : c) v *= std::conj(factor);
  return Representer(params_, nodes_, std::move(c));
}

Representer represent_functional(const PointFunctional& functional, const FockParams& params) {
  return Representer(functional, params);
}

namespace {

// L(z^a, g_r) for every representer r and monomial a, sharing the rays.
std::vector<std::vector<Estimate>> pairing_moments_many(std::span<const Representer> reps, int degree,
                                                        const PolarRules& rules, const ExecPolicy& exec) {
  if (reps.empty()) return {};
  const FockParams params = reps.front().params();
  require_finite_p(params, "pairing_moments");
  for (const auto& r : reps) {
    if (!(r.params() == params)) throw DomainError("pairing_moments: representers with different parameters");
  }
  const auto indices = all_multi_indices(params.n(), degree);
  const std::size_t m = indices.size();
  const std::size_t width = reps.size() * m;
  const double mn = m_n(params.n());
  const double lift = std::pow(fock_constant_C(params, mn), 1.0 / params.p());
  const FockParams two = params.with_p(2.0);
  const auto n = static_cast<std::size_t>(params.n());

  // The radial sum runs inside the angular integrand: with w = r xi,
  // z^a(w) = r^{|a|} xi^a, so each representer needs one radial sum per degree.
  const auto radii = rules.radial.radii();
  const auto weights = rules.radial.weights();
  const auto deg = static_cast<std::size_t>(degree);
  std::vector<double> front(radii.size());
  const double form = gaussian_form_constant(two, mn);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    front[i] = mn * weights[i] * lift * radii[i] * form * std::exp(-params.s() * radii[i] * radii[i]);
  }
  std::vector<std::size_t> degree_of(m);
  for (std::size_t a = 0; a < m; ++a) {
    degree_of[a] = static_cast<std::size_t>(std::accumulate(indices[a].begin(), indices[a].end(), 0));
  }
  SectionFunction section = [&](const ConePoint& xi, std::span<cplx> out) {
    std::vector<cplx> mono(m), radial((deg + 1) * reps.size());
    ComplexVector base(n);
    for (std::size_t k = 0; k < n; ++k) base[k] = xi[k];
    monomial_values(base, indices, degree, mono);
    std::vector<cplx> t, tf;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const auto& nodes = reps[r].nodes();
      const auto& d = reps[r].coefficients();
      t.resize(nodes.size());
      tf.resize(nodes.size());
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        t[j] = hermitian_dot(xi.vec(), nodes[j].vec());
        tf[j] = t[j] - 2.0 * xi.last() * std::conj(nodes[j].last());
      }
      cplx* acc = radial.data() + r * (deg + 1);
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const double rad = radii[i];
        cplx g = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          g += d[j] * (kernel_profile(rad * t[j], params) - kernel_profile(rad * tf[j], params));
        }
        // conj(T g) times the lift of z^a; the lift carries w_{n+1} = r xi_{n+1}.
        cplx h = std::conj(0.5 * g) * front[i] * xi.last();
        for (std::size_t k = 0; k <= deg; ++k, h *= rad) acc[k] += h;
      }
    }
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (std::size_t a = 0; a < m; ++a) out[r * m + a] = mono[a] * radial[r * (deg + 1) + degree_of[a]];
    }
  };
  const auto flat = integrate_M(section, width, rules.angular, exec);
  std::vector<std::vector<Estimate>> out(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r) out[r].assign(flat.begin() + r * m, flat.begin() + (r + 1) * m);
  return out;
}

}  // namespace

std::vector<Estimate> pairing_moments(const Representer& g, int degree, const PolarRules& rules, const ExecPolicy& exec) {
  return pairing_moments_many(std::span<const Representer>(&g, 1), degree, rules, exec).front();
}

// ---------------------------------------------------------------- NormCubature

NormCubature::NormCubature(const FockParams& params, int degree, std::int64_t rays, int radial_nodes,
                           std::uint64_t seed)
    : params_(params), degree_(degree) {
  require_finite_p(params, "NormCubature");
  const int n = params.n();
  const double p = params.p(), s = params.s();
  const auto indices = all_multi_indices(n, degree);
  basis_ = indices.size();
  const auto radial = RadialRule::gaussian(n, s * p / 2.0, radial_nodes, p / 2.0);
  const auto angular = AngularRule::monte_carlo(n, rays, HaarSampler(seed, 0x6e63));
  const double mn = m_n(n);
  const double constant = mn * fock_constant_C(params, mn) * gaussian_form_constant(params, mn);
  const std::size_t total = angular.size() * radial.size();
  omega_.reserve(total);
  matrix_.resize(total * basis_);
  ComplexVector xi;
  ComplexVector base(static_cast<std::size_t>(n));
  std::vector<cplx> row(basis_);
  std::size_t node = 0;
  for (std::size_t j = 0; j < angular.size(); ++j) {
    const double a = angular.node(j, xi);
    const double last = pow_abs(xi[static_cast<std::size_t>(n)], p);
    for (std::size_t i = 0; i < radial.size(); ++i, ++node) {
      const double r = radial.radii()[i];
      omega_.push_back(constant * a * radial.weights()[i] * last * std::pow(r, p) * std::exp(-s * p * r * r / 2.0));
      for (std::size_t k = 0; k < base.dim(); ++k) base[k] = r * xi[k];
      monomial_values(base, indices, degree, row);
      for (std::size_t b = 0; b < basis_; ++b) matrix_[b * total + node] = row[b];
    }
  }
}

double NormCubature::pth_power(std::span<const cplx> values) const {
  const double p = params_.p();
  double acc = 0.0;
  for (std::size_t i = 0; i < omega_.size(); ++i) acc += omega_[i] * pow_abs(values[i], p);
  return acc;
}

void NormCubature::values(std::span<const cplx> coeffs, std::span<cplx> out) const {
  if (coeffs.size() != basis_ || out.size() != omega_.size()) throw DimensionError("NormCubature::values: sizes");
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t a = 0; a < basis_; ++a) add_column(a, coeffs[a], out);
}

void NormCubature::add_column(std::size_t a, cplx delta, std::span<cplx> out) const {
  const auto col = column(a);
  for (std::size_t i = 0; i < col.size(); ++i) out[i] += delta * col[i];
}

std::span<const cplx> NormCubature::column(std::size_t a) const noexcept {
  return {matrix_.data() + a * omega_.size(), omega_.size()};
}

double NormCubature::norm(std::span<const cplx> coeffs) const {
  std::vector<cplx> v(omega_.size());
  values(coeffs, v);
  return std::pow(pth_power(v), 1.0 / params_.p());
}

double dual_norm_lb(std::span<const cplx> moments, const NormCubature& cubature, const DualSearch& search) {
  const std::size_t m = cubature.basis_size();
  if (moments.size() != m) throw DimensionError("dual_norm_lb: moments and cubature basis differ");
  if (search.budget < 1) throw DomainError("dual_norm_lb: budget must be positive");
  const double p = cubature.params().p();
  auto ratio = [p](cplx num, double pp) { return pp > 0.0 ? std::abs(num) / std::pow(pp, 1.0 / p) : 0.0; };
  const cplx dirs[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};

  double best = 0.0;
  const auto omega = cubature.weights();
  std::vector<cplx> c(m), v(cubature.nodes());
  for (int j = 0; j < search.budget; ++j) {
    if (j == 0) {
      for (std::size_t a = 0; a < m; ++a) c[a] = std::conj(moments[a]);
    } else {
      const CounterRng rng(search.seed, static_cast<std::uint64_t>(j));
      for (std::size_t a = 0; a < m; ++a) c[a] = cplx(rng.normal(2 * a), rng.normal(2 * a + 1));
    }
    double scale = 0.0;
    for (const auto& x : c) scale += std::norm(x);
    scale = std::sqrt(scale / static_cast<double>(m));
    if (scale == 0.0) continue;
    cubature.values(c, v);
    cplx num = 0.0;
    for (std::size_t a = 0; a < m; ++a) num += c[a] * moments[a];
    double pp = cubature.pth_power(v);
    double value = ratio(num, pp);

    double step = search.initial_step * scale;
    for (int sweep = 0; sweep < search.max_sweeps && step >= search.final_step * scale; ++sweep) {
      bool moved = false;
      for (std::size_t a = 0; a < m; ++a) {
        // The four moves along +-1, +-i share one pass over the nodes.
        const auto col = cubature.column(a);
        double tpp[4] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < col.size(); ++i) {
          const cplx d = step * col[i];
          const cplx id(-d.imag(), d.real());
          const double w = omega[i];
          tpp[0] += w * pow_abs(v[i] + d, p);
          tpp[1] += w * pow_abs(v[i] - d, p);
          tpp[2] += w * pow_abs(v[i] + id, p);
          tpp[3] += w * pow_abs(v[i] - id, p);
        }
        int pick = -1;
        for (int k = 0; k < 4; ++k) {
          const double tv = ratio(num + step * dirs[k] * moments[a], tpp[k]);
          if (tv > value) {
            value = tv;
            pick = k;
          }
        }
        if (pick >= 0) {
          const cplx delta = step * dirs[pick];
          num += delta * moments[a];
          pp = tpp[pick];
          c[a] += delta;
          cubature.add_column(a, delta, v);
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::max(best, value);
  }
  return best;
}

double dual_norm_lb(const Representer& g, const NormCubature& cubature, const PolarRules& rules,
                    const DualSearch& search, const ExecPolicy& exec) {
  const auto est = pairing_moments(g, cubature.degree(), rules, exec);
  std::vector<cplx> moments;
  moments.reserve(est.size());
  for (const auto& e : est) moments.push_back(e.value);
  return dual_norm_lb(moments, cubature, search);
}

// ------------------------------------------------------------------ experiment

std::vector<PointFunctional> duality_family(const DualityConfig& config) {
  const int n = config.params.n();
  const auto un = static_cast<std::size_t>(n);
  if (config.functionals < 1) throw DomainError("duality: at least one functional is required");
  if (config.max_points < 1) throw DomainError("duality: max_points must be positive");
  if (!(config.min_radius > 0.0) || !(config.max_radius >= config.min_radius))
    throw DomainError("duality: invalid point radii");
  std::vector<PointFunctional> family;
  for (int j = 0; j < config.functionals; ++j) {
    const CounterRng rng(config.quad.seed, 0xfa0000 + static_cast<std::uint64_t>(j));
    const int count = j == 0 ? 1 : 1 + j % config.max_points;
    std::vector<PointFunctional::Term> terms;
    for (std::uint64_t t = 0; static_cast<int>(terms.size()) < count; ++t) {
      if (t > 10000) throw ConvergenceError("duality: could not place functional points");
      const std::uint64_t c0 = t * (2 * un + 3);
      ComplexVector z(un);
      for (std::size_t k = 0; k < un; ++k) z[k] = cplx(rng.normal(c0 + 2 * k), rng.normal(c0 + 2 * k + 1));
      const double nz = hahn_pflug(z);
      if (nz == 0.0) continue;
      const double radius = config.min_radius + (config.max_radius - config.min_radius) * rng.uniform(2 * (c0 + 2 * un));
      z *= radius / nz;
      if (std::abs(bilinear_dot(z, z)) < 0.1 * hermitian_norm_sq(z)) continue;
      const cplx weight = j == 0 ? cplx(1.0) : cplx(rng.normal(c0 + 2 * un + 1), rng.normal(c0 + 2 * un + 2));
      terms.push_back({z, weight});
    }
    family.emplace_back(PointFunctional::Domain::fock, std::move(terms));
  }
  return family;
}

namespace {

int residual_degree(int n, int functions) {
  int d = 0;
  while (static_cast<int>(all_multi_indices(n, d).size()) < functions) ++d;
  return d;
}

std::string describe(const PointFunctional& g) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto& t = g.terms()[j];
    if (j) os << " + ";
    os << "(" << t.weight.real() << (t.weight.imag() < 0 ? "-" : "+") << std::abs(t.weight.imag()) << "i)*delta"
       << t.point;
  }
  return os.str();
}

Check make_check(const std::string& name, const FockParams& params, int degree) {
  Check c;
  c.name = name;
  c.n = params.n();
  c.s = params.s();
  c.p = params.p();
  c.degree = degree;
  return c;
}

void run_experiment(const DualityConfig& config, DualityReport& report) {
  config.quad.validate();
  const FockParams& params = config.params;
  require_finite_p(params, "duality");
  if (config.residual_functions < 1) throw DomainError("duality: residual_functions must be positive");
  if (config.search_degree < 0 || config.pair_degree < 0) throw DomainError("duality: degrees must be >= 0");
  const int n = params.n();
  const double s = params.s();
  report.m_n = m_n(n);

  const auto family = duality_family(config);
  std::vector<Representer> reps;
  for (const auto& g : family) reps.emplace_back(g, params);

  // (1) representation residuals and the moments for the dual-norm search.
  const int rdeg = residual_degree(n, config.residual_functions);
  const int mdeg = std::max(rdeg, config.search_degree);
  const auto indices = all_multi_indices(n, mdeg);
  PolarRules rules{RadialRule::gaussian(n, s, config.quad.radial_nodes),
                   config.product_degree > 0
                       ? AngularRule::product(n, config.product_degree)
                       : AngularRule::monte_carlo(n, config.quad.mc_samples, HaarSampler(config.quad.seed, 0x7265))};
  const auto moments = pairing_moments_many(reps, mdeg, rules, config.quad.exec());

  const NormCubature cubature(params, config.search_degree, config.norm_rays, config.norm_radial,
                              config.quad.seed ^ 0x6375ULL);
  const std::size_t search_size = cubature.basis_size();

  report.min_sandwich_ratio = INFINITY;
  for (std::size_t j = 0; j < family.size(); ++j) {
    FunctionalRecord rec;
    rec.descriptor = describe(family[j]);
    rec.points = family[j].size();
    Check res = make_check("duality.representation[" + std::to_string(j) + "]", params, rdeg);
    res.pass = true;
    const bool stochastic = rules.angular.stochastic();
    res.tol = config.tol_abs;
    for (int a = 0; a < config.residual_functions; ++a) {
      const Poly f = Poly::monomial(n, indices[static_cast<std::size_t>(a)]);
      const Estimate& l = moments[j][static_cast<std::size_t>(a)];
      const double r = std::abs(family[j](f) - l.value);
      rec.residuals.push_back(r);
      rec.residual_stderr.push_back(l.stderr);
      const double allowed = stochastic ? std::max(config.tol_abs, config.tol_stderr_mult * l.stderr) : config.tol_abs;
      if (r > allowed) res.pass = false;
      if (allowed > 0.0 && r / allowed >= res.ratio) {
        res.ratio = r / allowed;
        res.value = r;
        res.stderr = l.stderr;
        res.bound = allowed;
      }
    }
    res.detail = stochastic ? "residual <= max(tol_abs, mult * stderr)" : "residual <= tol_abs";
    report.checks.push_back(res);

    // (3) sandwich and kernel growth.
    std::vector<cplx> ell(search_size);
    for (std::size_t a = 0; a < search_size; ++a) ell[a] = moments[j][a].value;
    rec.functional_norm_lb = dual_norm_lb(ell, cubature, config.search);
    rec.g_norm_sup = norm_sup(reps[j].fock_function(), n, s, config.sup).value;
    if (rec.g_norm_sup == 0.0) throw NonFiniteError("duality: representer has zero sup norm");
    rec.sandwich_ratio = rec.functional_norm_lb / rec.g_norm_sup;
    double scale = 0.0;
    for (const auto& t : family[j].terms()) {
      const double nz = hahn_pflug(t.point);
      scale += std::abs(t.weight) * std::exp(s * nz * nz / 2.0);
    }
    rec.growth_ratio = rec.g_norm_sup / scale;
    report.min_sandwich_ratio = std::min(report.min_sandwich_ratio, rec.sandwich_ratio);
    report.max_sandwich_ratio = std::max(report.max_sandwich_ratio, rec.sandwich_ratio);
    report.max_growth_ratio = std::max(report.max_growth_ratio, rec.growth_ratio);
    report.functionals.push_back(std::move(rec));
  }

  // (2) boundedness of L on random polynomial pairs.
  const PairingGram gram(n, s, config.pair_degree);
  std::vector<Poly> fs, gs;
  const CounterRng pair_rng(config.quad.seed, 0xb0b0);
  const int span = config.pair_degree + 1;
  for (int k = 0; k < config.pairs; ++k) {
    fs.push_back(random_poly(n, k % span, pair_rng.substream(2 * static_cast<std::uint64_t>(k))));
    gs.push_back(random_poly(n, (k / span) % span, pair_rng.substream(2 * static_cast<std::uint64_t>(k) + 1)));
  }
  const auto fnorms = norm_fock(fs, params, config.quad.with_stream(config.quad.stream + 0xf0));
  for (int k = 0; k < config.pairs; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double gsup = norm_sup(gs[ku], params, config.sup).value;
    const double denom = fnorms[ku].value * gsup;
    if (denom == 0.0) throw NonFiniteError("duality: zero norm in the boundedness family");
    report.max_pairing_ratio = std::max(report.max_pairing_ratio, std::abs(gram(fs[ku], gs[ku], params)) / denom);
  }

  if (config.constants) {
    const auto& k = *config.constants;
    Check b = make_check("duality.boundedness", params, config.pair_degree);
    b.value = report.max_pairing_ratio;
    b.bound = k.c_pairing;
    b.ratio = k.c_pairing > 0 ? b.value / k.c_pairing : INFINITY;
    b.pass = b.value <= k.c_pairing;
    b.detail = "max |L(f,g)| / (||f||_p ||g||_inf) over " + std::to_string(config.pairs) + " pairs";
    report.checks.push_back(b);

    Check lo = make_check("duality.sandwich.lower", params, config.search_degree);
    lo.value = report.min_sandwich_ratio;
    lo.bound = 1.0 / k.c_sandwich;
    lo.ratio = lo.value > 0 ? lo.bound / lo.value : INFINITY;
    lo.pass = lo.value >= lo.bound;
    lo.detail = "min dual_norm_lb(g) / ||g||_inf";
    report.checks.push_back(lo);

    Check hi = make_check("duality.sandwich.upper", params, config.search_degree);
    hi.value = report.max_sandwich_ratio;
    hi.bound = k.c_sandwich;
    hi.ratio = hi.value / hi.bound;
    hi.pass = hi.value <= hi.bound;
    hi.detail = "max dual_norm_lb(g) / ||g||_inf";
    report.checks.push_back(hi);

    Check gr = make_check("duality.kernel_growth", params, -1);
    gr.value = report.max_growth_ratio;
    gr.bound = k.c_growth;
    gr.ratio = k.c_growth > 0 ? gr.value / k.c_growth : INFINITY;
    gr.pass = gr.value <= k.c_growth;
    gr.detail = "max ||g||_inf / sum_j |c_j| e^{s |z_j|^2 / 2}";
    report.checks.push_back(gr);
  }
}

}  // namespace

DualityReport run_duality_experiment(const DualityConfig& config) {
  DualityReport report;
  report.config = config;
  try {
    run_experiment(config, report);
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  report.pass = report.error.empty() && all_pass(report.checks);
  return report;
}

void to_json(nlohmann::json& j, const DualityReport& r) {
  const auto& c = r.config;
  nlohmann::json config = {
      {"n", c.params.n()},
      {"s", c.params.s()},
      {"p", c.params.p()},
      {"functionals", c.functionals},
      {"max_points", c.max_points},
      {"min_radius", c.min_radius},
      {"max_radius", c.max_radius},
      {"residual_functions", c.residual_functions},
      {"product_degree", c.product_degree},
      {"radial_nodes", c.quad.radial_nodes},
      {"mc_samples", c.quad.mc_samples},
      {"batch", c.quad.batch},
      {"norm_rays", c.norm_rays},
      {"norm_radial", c.norm_radial},
      {"search_degree", c.search_degree},
      {"search_budget", c.search.budget},
      {"sup_budget", c.sup.budget},
      {"pairs", c.pairs},
      {"pair_degree", c.pair_degree},
      {"tol_abs", c.tol_abs},
      {"tol_stderr_mult", c.tol_stderr_mult},
  };
  nlohmann::json constants = nullptr;
  if (c.constants) {
    constants = {{"C_pairing", c.constants->c_pairing},
                 {"C_sandwich", c.constants->c_sandwich},
                 {"C_growth", c.constants->c_growth}};
  }
  nlohmann::json functionals = nlohmann::json::array();
  for (const auto& f : r.functionals) {
    nlohmann::json residuals = nlohmann::json::array();
    for (std::size_t i = 0; i < f.residuals.size(); ++i) {
      residuals.push_back({{"test_function", i}, {"residual", f.residuals[i]}, {"stderr", f.residual_stderr[i]}});
    }
    functionals.push_back({{"functional", f.descriptor},
                           {"points", f.points},
                           {"g_norm_sup", f.g_norm_sup},
                           {"functional_norm_lb", f.functional_norm_lb},
                           {"sandwich_ratio", f.sandwich_ratio},
                           {"growth_ratio", f.growth_ratio},
                           {"representation_residuals", std::move(residuals)}});
  }
  j = nlohmann::json{{"config", std::move(config)},
                     {"m_n", r.m_n},
                     {"constants", std::move(constants)},
                     {"checks", r.checks},
                     {"functionals", std::move(functionals)},
                     {"extremes",
                      {{"max_pairing_ratio", r.max_pairing_ratio},
                       {"min_sandwich_ratio", std::isfinite(r.min_sandwich_ratio) ? r.min_sandwich_ratio : 0.0},
                       {"max_sandwich_ratio", r.max_sandwich_ratio},
                       {"max_growth_ratio", r.max_growth_ratio}}},
                     {"seed", c.quad.seed},
                     {"pass", r.pass},
                     {"error", r.error}};
}

}  // namespace fockdual
