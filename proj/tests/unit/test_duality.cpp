#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "fockdual/cone.hpp"
#include "fockdual/duality.hpp"
#include "fockdual/errors.hpp"
#include "fockdual/kernels.hpp"
#include "fockdual/measure.hpp"
#include "fockdual/poly.hpp"
#include "fockdual/rng.hpp"

using namespace fockdual;

namespace {

QuadSpec quad(std::int64_t samples, std::uint64_t stream) {
  QuadSpec q;
  q.mc_samples = samples;
  q.stream = stream;
  return q;
}

PolarRules product_rules(int n, int degree, double s) {
  return {RadialRule::gaussian(n, s, 32), AngularRule::product(n, degree)};
}

}  // namespace

TEST_CASE("pairing reproduces the odd kernel") {
  const FockParams params(2, 1.0, 1.0);
  const ConePoint z0 = sample_M(HaarSampler(4, 4), 2, 0).scaled(0.6);
  const KernelSection k(z0, params, KernelSection::Variant::odd);
  const Estimate e = pairing_cone(k.as_function(), k.as_function(), params, product_rules(2, 40, 1.0));
  CHECK(std::abs(e.value - odd_kernel(z0, z0, params)) < 1e-10);
}

TEST_CASE("odd and even functions are orthogonal") {
  const FockParams params(2, 1.0, 1.0);
  const ConeFunction odd = [](const ConePoint& w) { return w.last() * w[0]; };
  const ConeFunction even = [](const ConePoint& w) { return w[0] * w[1]; };
  const Estimate e = pairing_cone(odd, even, params, quad(50000, 1));
  CHECK(std::abs(e.value) <= 3.0 * e.stderr + 1e-12);
}

TEST_CASE("pairing with the zero function") {
  const FockParams params(2, 1.0, 0.5);
  CHECK(std::abs(pairing_fock(random_poly(2, 3, CounterRng(1, 1)), Poly(2), params, quad(1000, 2)).value) == 0.0);
}

TEST_CASE("exact Gram pairing agrees with quadrature") {
  const FockParams params(2, 1.0, 0.5);
  const PairingGram gram(2, 1.0, 3);
  const Poly f = random_poly(2, 3, CounterRng(2, 1)), g = random_poly(2, 3, CounterRng(2, 2));
  const Estimate q = pairing_fock(f, g, params, quad(200000, 3));
  CHECK(std::abs(gram(f, g, params) - q.value) <= 3.0 * q.stderr + 1e-10);
  CHECK_THROWS_AS(gram(random_poly(2, 4, CounterRng(2, 3)), g, params), DomainError);
}

TEST_CASE("point evaluation is represented by the kernel") {
  const FockParams params(2, 1.0, 1.0);
  const ComplexVector z0{0.5, cplx(0.1, -0.3)};
  const PointFunctional g(PointFunctional::Domain::fock, {{z0, 1.0}});
  const Representer rep = represent_functional(g, params);
  const auto moments = pairing_moments(rep, 5, product_rules(2, 40, 1.0));
  const auto indices = all_multi_indices(2, 5);
  REQUIRE(moments.size() == indices.size());
  for (std::size_t a = 0; a < 20; ++a) {
    const Poly f = Poly::monomial(2, indices[a]);
    CHECK(std::abs(g(f) - moments[a].value) <= 1e-8);
  }
}

TEST_CASE("representation is linear in the functional") {
  const FockParams params(2, 1.0, 0.5);
  const ComplexVector a{0.5, 0.2}, b{cplx(0.0, 0.4), 0.3};
  const Representer ra = represent_functional(PointFunctional(PointFunctional::Domain::fock, {{a, 1.0}}), params);
  const Representer rb = represent_functional(PointFunctional(PointFunctional::Domain::fock, {{b, 1.0}}), params);
  const Representer rab =
      represent_functional(PointFunctional(PointFunctional::Domain::fock, {{a, 1.0}, {b, -1.0}}), params);
  const ComplexVector z{0.3, cplx(-0.7, 0.2)};
  CHECK(std::abs(rab.on_fock(z) - (ra.on_fock(z) - rb.on_fock(z))) < 1e-13);
  CHECK_THROWS(represent_functional(PointFunctional(PointFunctional::Domain::fock, {}), params));
}

TEST_CASE("representer on C^n lifts to its cone form") {
  const FockParams params(3, 1.0, 1.0);
  const ComplexVector z0{0.4, 0.1, cplx(0.0, 0.5)};
  const Representer rep = represent_functional(PointFunctional(PointFunctional::Domain::fock, {{z0, 1.0}}), params);
  const ComplexVector z{0.2, cplx(0.3, 0.1), -0.6};
  const ConePoint w = lift_plus(z);
  CHECK(std::abs(rep.on_cone(w) - w.last() * rep.on_fock(z)) < 1e-12);
}

TEST_CASE("dual norm lower bound") {
  const FockParams params(2, 1.0, 0.5);
  const NormCubature cub(params, 3, 400, 12, 5);
  std::vector<cplx> ell(cub.basis_size());
  const CounterRng rng(3, 9);
  for (std::size_t a = 0; a < ell.size(); ++a) ell[a] = cplx(rng.normal(2 * a), rng.normal(2 * a + 1));
  DualSearch s;
  s.budget = 2;
  const double base = dual_norm_lb(ell, cub, s);
  CHECK(base > 0.0);

  std::vector<cplx> scaled = ell;
  for (auto& x : scaled) x *= cplx(0.0, 3.0);
  CHECK(dual_norm_lb(scaled, cub, s) == doctest::Approx(3.0 * base).epsilon(1e-9));

  DualSearch more = s;
  more.budget = 4;
  CHECK(dual_norm_lb(ell, cub, more) >= base);

  std::vector<cplx> wrong(ell.size() + 1);
  CHECK_THROWS_AS(dual_norm_lb(wrong, cub, s), DimensionError);
}

TEST_CASE("small duality experiment") {
  DualityConfig c;
  c.params = FockParams(2, 1.0, 1.0);
  c.functionals = 3;
  c.product_degree = 30;
  c.quad.radial_nodes = 32;
  c.norm_rays = 200;
  c.norm_radial = 12;
  c.search.budget = 2;
  c.sup.budget = 4;
  c.pairs = 5;
  const DualityReport r = run_duality_experiment(c);
  CHECK(r.error.empty());
  CHECK(r.pass);
  CHECK(r.functionals.size() == 3);
  for (const auto& f : r.functionals) {
    for (double res : f.residuals) CHECK(res <= 1e-8);
    CHECK(f.sandwich_ratio > 0.0);
  }
  const DualityReport again = run_duality_experiment(c);
  CHECK(nlohmann::json(again).dump() == nlohmann::json(r).dump());
}
