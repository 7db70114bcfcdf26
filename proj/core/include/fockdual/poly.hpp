#pragma once

#include <nlohmann/json_fwd.hpp>
#include <span>
#include <vector>

#include "fockdual/cone.hpp"
#include "fockdual/params.hpp"
#include "fockdual/rng.hpp"

namespace fockdual {

using MultiIndex = std::vector<int>;

/// Graded-lexicographic comparison: total degree first, then larger leading exponents first.
bool grlex_less(std::span<const int> a, std::span<const int> b) noexcept;

/// Every multi-index of length n with total degree <= degree, in grlex order.
std::vector<MultiIndex> all_multi_indices(int n, int degree);

/// Finite polynomial on C^n. Terms are kept in grlex order without zero
/// coefficients; exponents are stored flat, n per term.
class Poly {
 public:
  struct Term {
    MultiIndex alpha;
    cplx coeff;
  };

  /// The zero polynomial on C^n.
  explicit Poly(int n);
  /// Sums duplicate multi-indices and drops zeros. Throws DimensionError on
  /// index length != n and DomainError on negative exponents.
  Poly(int n, const std::vector<Term>& terms);

  static Poly constant(int n, cplx c);
  static Poly monomial(int n, const MultiIndex& alpha, cplx c = 1.0);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept { return degree_; }

  std::span<const int> alpha(std::size_t i) const noexcept {
    return {exps_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  cplx coeff(std::size_t i) const noexcept { return coeffs_[i]; }
  std::vector<Term> terms() const;

  /// Throws DimensionError unless z.dim() == n.
  cplx operator()(const ComplexVector& z) const;
  /// Values of the homogeneous components: out[k] = f_k(z) for k <= degree().
  /// out must have at least degree() + 1 entries.
  void homogeneous_values(const ComplexVector& z, std::span<cplx> out) const;
  Poly homogeneous_component(int k) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(cplx factor);

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.n_ == b.n_ && a.exps_ == b.exps_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void rebuild(std::vector<Term> terms);
  // Computes the power tables of z and calls sink(term, value_of_monomial).
  template <class Sink>
  void for_each_monomial(const ComplexVector& z, Sink&& sink) const;

  int n_;
  int degree_ = -1;
  std::vector<int> exps_;
  std::vector<cplx> coeffs_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(cplx factor, Poly f);

cplx eval_poly(const Poly& f, const ComplexVector& z);

/// Independent standard complex Gaussian coefficients (E|c|^2 = 1) on every
/// multi-index of degree <= degree, drawn in grlex order from rng.
Poly random_poly(int n, int degree, const CounterRng& rng);

/// {n, terms: [{alpha, re, im}]}.
void to_json(nlohmann::json& j, const Poly& f);
/// Throws nlohmann::json exceptions on malformed input and DimensionError on bad index lengths.
Poly poly_from_json(const nlohmann::json& j);

/// Holomorphic function on H in its flip-parity split:
/// h(w) = even(w_1..w_n) + w_{n+1} odd(w_1..w_n).
struct ConeFun {
  Poly even;
  Poly odd;

  explicit ConeFun(int n) : even(n), odd(n) {}
  ConeFun(Poly even_part, Poly odd_part);

  int n() const noexcept { return even.n(); }
  int degree() const noexcept;

  ConeFun& operator+=(const ConeFun& other);
  ConeFun& operator*=(cplx factor);
  friend bool operator==(const ConeFun&, const ConeFun&) = default;
};

ConeFun operator+(ConeFun a, const ConeFun& b);
ConeFun operator*(cplx factor, ConeFun h);

/// Throws DimensionError unless w lives in C^{n+1}.
cplx eval_cone(const ConeFun& h, const ConePoint& w);

/// C(p) = 2^{n-3} m_n (n-2)! / ((sp)^{n-1} (n+1)^2). Throws DomainError for p = inf.
double fock_constant_C(const FockParams& params, double m_n);
double fock_constant_C(const FockParams& params);

/// T_p f (w) = C(p)^{1/p} w_{n+1} f(w_1..w_n). Throws DomainError for p = inf.
ConeFun lift_T_p(const Poly& f, const FockParams& params, double m_n);
ConeFun lift_T_p(const Poly& f, const FockParams& params);

/// T g (w) = w_{n+1} g(w_1..w_n).
ConeFun lift_T(const Poly& g);

/// G = sum_j c_j delta_{z_j}: a finite combination of point evaluations,
/// on C^n (fock) or on the cone (cone).
class PointFunctional {
 public:
  enum class Domain { fock, cone };
  struct Term {
    ComplexVector point;
    cplx weight;
  };

  /// Throws DomainError when empty, when points repeat or when a cone point
  /// is off the cone; DimensionError on mixed dimensions.
  PointFunctional(Domain domain, std::vector<Term> terms);

  Domain domain() const noexcept { return domain_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  /// n of the base space C^n.
  int n() const noexcept;

  /// G(f) for a fock-domain functional. Throws DomainError on the wrong domain.
  cplx operator()(const Poly& f) const;
  /// G(h) for a cone-domain functional.
  cplx operator()(const ConeFun& h) const;

 private:
  Domain domain_;
  std::vector<Term> terms_;
};

}  // namespace fockdual
