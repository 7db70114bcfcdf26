#include "fockdual/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "fockdual/errors.hpp"
#include "fockdual/integrate.hpp"

namespace fockdual {

bool grlex_less(std::span<const int> a, std::span<const int> b) noexcept {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<MultiIndex> all_multi_indices(int n, int degree) {
  if (n < 1) throw DomainError("all_multi_indices: n must be positive");
  std::vector<MultiIndex> out;
  MultiIndex alpha(static_cast<std::size_t>(n), 0);
  // Within total degree d, lexicographically descending: recurse on the first exponent from d down.
  auto fill = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == alpha.size()) {
      alpha[pos] = remaining;
      out.push_back(alpha);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      alpha[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  for (int d = 0; d <= degree; ++d) fill(fill, 0, d);
  return out;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(int n) : n_(n) {
  if (n < 1 || static_cast<std::size_t>(n) > kMaxDim) throw DimensionError("Poly: unsupported number of variables");
}

Poly::Poly(int n, const std::vector<Term>& terms) : Poly(n) { rebuild(terms); }

Poly Poly::constant(int n, cplx c) { return Poly(n, {{MultiIndex(static_cast<std::size_t>(n), 0), c}}); }

Poly Poly::monomial(int n, const MultiIndex& alpha, cplx c) { return Poly(n, {{alpha, c}}); }

void Poly::rebuild(std::vector<Term> terms) {
  auto cmp = [](const MultiIndex& a, const MultiIndex& b) { return grlex_less(a, b); };
  std::map<MultiIndex, cplx, decltype(cmp)> merged(cmp);
  for (auto& t : terms) {
    if (t.alpha.size() != static_cast<std::size_t>(n_)) throw DimensionError("Poly: multi-index length differs from n");
    for (int e : t.alpha) {
      if (e < 0) throw DomainError("Poly: negative exponent");
    }
    merged[t.alpha] += t.coeff;
  }
  exps_.clear();
  coeffs_.clear();
  degree_ = -1;
  for (const auto& [alpha, c] : merged) {
    if (c == 0.0) continue;
    exps_.insert(exps_.end(), alpha.begin(), alpha.end());
    coeffs_.push_back(c);
    degree_ = std::max(degree_, std::accumulate(alpha.begin(), alpha.end(), 0));
  }
}

std::vector<Poly::Term> Poly::terms() const {
  std::vector<Term> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto a = alpha(i);
    out.push_back({MultiIndex(a.begin(), a.end()), coeffs_[i]});
  }
  return out;
}

template <class Sink>
void Poly::for_each_monomial(const ComplexVector& z, Sink&& sink) const {
  if (z.dim() != static_cast<std::size_t>(n_)) {
    std::ostringstream msg;
    msg << "Poly: evaluation point of dimension " << z.dim() << " for a polynomial in " << n_ << " variables";
    throw DimensionError(msg.str());
  }
  if (coeffs_.empty()) return;
  const auto width = static_cast<std::size_t>(degree_ + 1);
  std::vector<cplx> powers(static_cast<std::size_t>(n_) * width);
  for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) {
    cplx acc = 1.0;
    for (std::size_t e = 0; e < width; ++e) {
      powers[v * width + e] = acc;
      acc *= z[v];
    }
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto a = alpha(i);
    cplx m = coeffs_[i];
    int total = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a[v] != 0) m *= powers[v * width + static_cast<std::size_t>(a[v])];
      total += a[v];
    }
    sink(total, m);
  }
}

cplx Poly::operator()(const ComplexVector& z) const {
  cplx acc = 0.0;
  for_each_monomial(z, [&](int, cplx m) { acc += m; });
  return acc;
}

void Poly::homogeneous_values(const ComplexVector& z, std::span<cplx> out) const {
  const auto need = static_cast<std::size_t>(degree_ + 1);
  if (out.size() < need) throw DimensionError("Poly::homogeneous_values: output span too short");
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(need), cplx{});
  for_each_monomial(z, [&](int k, cplx m) { out[static_cast<std::size_t>(k)] += m; });
}

Poly Poly::homogeneous_component(int k) const {
  std::vector<Term> keep;
  for (auto& t : terms()) {
    if (std::accumulate(t.alpha.begin(), t.alpha.end(), 0) == k) keep.push_back(std::move(t));
  }
  return Poly(n_, keep);
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.n_ != n_) throw DimensionError("Poly: adding polynomials in different numbers of variables");
  auto all = terms();
  auto more = other.terms();
  all.insert(all.end(), more.begin(), more.end());
  rebuild(std::move(all));
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -1.0 * other; }

Poly& Poly::operator*=(cplx factor) {
  if (factor == 0.0) {
    exps_.clear();
    coeffs_.clear();
    degree_ = -1;
    return *this;
  }
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(cplx factor, Poly f) { return f *= factor; }

cplx eval_poly(const Poly& f, const ComplexVector& z) { return f(z); }

Poly random_poly(int n, int degree, const CounterRng& rng) {
  if (degree < 0) throw DomainError("random_poly: degree must be >= 0");
  const auto indices = all_multi_indices(n, degree);
  std::vector<Poly::Term> terms;
  terms.reserve(indices.size());
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    terms.push_back({indices[j], cplx(h * rng.normal(2 * j), h * rng.normal(2 * j + 1))});
  }
  return Poly(n, terms);
}

void to_json(nlohmann::json& j, const Poly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto a = f.alpha(i);
    terms.push_back({{"alpha", std::vector<int>(a.begin(), a.end())}, {"re", f.coeff(i).real()}, {"im", f.coeff(i).imag()}});
  }
  j = nlohmann::json{{"n", f.n()}, {"terms", std::move(terms)}};
}

Poly poly_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<Poly::Term> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({t.at("alpha").get<MultiIndex>(), cplx(t.at("re").get<double>(), t.at("im").get<double>())});
  }
  return Poly(n, terms);
}

// ----------------------------------------------------------------- ConeFun

ConeFun::ConeFun(Poly even_part, Poly odd_part) : even(std::move(even_part)), odd(std::move(odd_part)) {
  if (even.n() != odd.n()) throw DimensionError("ConeFun: even and odd parts differ in n");
}

int ConeFun::degree() const noexcept { return std::max(even.degree(), odd.degree() < 0 ? -1 : odd.degree() + 1); }

ConeFun& ConeFun::operator+=(const ConeFun& other) {
  even += other.even;
  odd += other.odd;
  return *this;
}

ConeFun& ConeFun::operator*=(cplx factor) {
  even *= factor;
  odd *= factor;
  return *this;
}

ConeFun operator+(ConeFun a, const ConeFun& b) { return a += b; }
ConeFun operator*(cplx factor, ConeFun h) { return h *= factor; }

cplx eval_cone(const ConeFun& h, const ConePoint& w) {
  if (w.base_dim() != static_cast<std::size_t>(h.n())) throw DimensionError("eval_cone: point dimension differs from n + 1");
  const ComplexVector base = project(w);
  cplx value = h.even.is_zero() ? cplx{} : h.even(base);
  if (!h.odd.is_zero()) value += w.last() * h.odd(base);
  return value;
}

double fock_constant_C(const FockParams& params, double m_n) {
  if (params.p_infinite()) throw DomainError("C(p) is defined for finite p only");
  const int n = params.n();
  const double sp = params.s() * params.p();
  return std::exp((n - 3) * std::log(2.0) + std::log(m_n) + std::lgamma(n - 1.0) - (n - 1) * std::log(sp)) /
         ((n + 1.0) * (n + 1.0));
}

double fock_constant_C(const FockParams& params) { return fock_constant_C(params, m_n(params.n())); }

ConeFun lift_T_p(const Poly& f, const FockParams& params, double m_n) {
  if (params.p_infinite()) throw DomainError("lift_T_p: p = inf has no constant, use lift_T");
  if (f.n() != params.n()) throw DimensionError("lift_T_p: polynomial and parameters differ in n");
  const double c = std::pow(fock_constant_C(params, m_n), 1.0 / params.p());
  return ConeFun(Poly(f.n()), c * f);
}

ConeFun lift_T_p(const Poly& f, const FockParams& params) { return lift_T_p(f, params, m_n(params.n())); }

ConeFun lift_T(const Poly& g) { return ConeFun(Poly(g.n()), g); }

// --------------------------------------------------------- PointFunctional

PointFunctional::PointFunctional(Domain domain, std::vector<Term> terms) : domain_(domain), terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("PointFunctional: empty functional");
  const std::size_t dim = terms_.front().point.dim();
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& p = terms_[i].point;
    if (p.dim() != dim) throw DimensionError("PointFunctional: points of different dimension");
    if (domain_ == Domain::cone) (void)ConePoint(p);
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[j].point == p) throw DomainError("PointFunctional: repeated point");
    }
  }
  if (domain_ == Domain::fock && dim < 2) throw DimensionError("PointFunctional: n must be >= 2");
}

int PointFunctional::n() const noexcept {
  const auto dim = static_cast<int>(terms_.front().point.dim());
  return domain_ == Domain::cone ? dim - 1 : dim;
}

cplx PointFunctional::operator()(const Poly& f) const {
  if (domain_ != Domain::fock) throw DomainError("PointFunctional: cone functional applied to a polynomial on C^n");
  cplx acc = 0.0;
  for (const auto& t : terms_) acc += t.weight * f(t.point);
  return acc;
}

cplx PointFunctional::operator()(const ConeFun& h) const {
  if (domain_ != Domain::cone) throw DomainError("PointFunctional: fock functional applied to a cone function");
  cplx acc = 0.0;
  for (const auto& t : terms_) acc += t.weight * eval_cone(h, ConePoint::trusted(t.point));
  return acc;
}

}  // namespace fockdual
